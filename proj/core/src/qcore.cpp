#include "qwalk/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr Complex kI{0.0, 1.0};

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> hermitian_eigenvalues_2x2(const Matrix2c& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::abs(0.5 * (m(0, 1) + std::conj(m(1, 0))));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), off);
  return {mean - radius, mean + radius};
}

}  // namespace

Matrix2c identity2() { return Matrix2c::Identity(); }

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2c pauli_y() {
  Matrix2c m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix2c pauli_z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2c coin_projector(int i) {
  Matrix2c p = Matrix2c::Zero();
  p(i, i) = 1.0;
  return p;
}

Matrix2c rotation_u0() {
  const double s = std::sqrt(0.5);
  Matrix2c u;
  u << s, s, -s, s;
  return u;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("hermiticity_defect: matrix not square");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs_diff(u.adjoint() * u, id) < tol && max_abs_diff(u * u.adjoint(), id) < tol;
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  if (m.rows() == 2 && m.cols() == 2) {
    return hermitian_eigenvalues_2x2(m)[0];
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::optional<std::string> density_matrix_defect(const ComplexMatrix& m, double herm_tol,
                                                 double trace_tol, double pos_tol) {
  std::ostringstream why;
  if (m.rows() != m.cols() || m.rows() == 0) {
    why << "not a non-empty square matrix (" << m.rows() << "x" << m.cols() << ")";
    return why.str();
  }
  if (!m.allFinite()) return std::string("non-finite entries");
  const double herm = hermiticity_defect(m);
  if (herm >= herm_tol) {
    why << "not Hermitian (defect " << herm << ")";
    return why.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) >= trace_tol) {
    why << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i != 1";
    return why.str();
  }
  const double lo = min_hermitian_eigenvalue(m);
  if (lo < -pos_tol) {
    why << "negative eigenvalue " << lo;
    return why.str();
  }
  return std::nullopt;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double BlochVector::norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }

CoinState::CoinState(const Matrix2c& rho) : rho_(rho) {
  if (auto defect = density_matrix_defect(rho)) {
    throw ParameterError("invalid coin state: " + *defect);
  }
}

CoinState CoinState::maximally_mixed() { return CoinState(0.5 * identity2(), Unchecked{}); }

CoinState CoinState::pure(const Vector2c& amplitudes) {
  const double nrm = amplitudes.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ParameterError("coin amplitudes must be nonzero");
  const Vector2c v = amplitudes / nrm;
  return CoinState(v * v.adjoint());
}

CoinState CoinState::from_computed(const Matrix2c& rho, double tol) {
  if (auto defect = density_matrix_defect(rho, tol, tol, tol)) {
    throw InvariantViolation("computed coin state is invalid: " + *defect);
  }
  return CoinState(rho, Unchecked{});
}

BlochVector CoinState::bloch() const { return bloch_from_density(*this); }

Vector2c coin_vector_from_angle(double chi) {
  if (!std::isfinite(chi)) throw ParameterError("coin angle must be finite");
  return Vector2c(Complex(std::cos(chi), 0.0), Complex(0.0, std::sin(chi)));
}

CoinState coin_state_from_angle(double chi) {
  const Vector2c c = coin_vector_from_angle(chi);
  return CoinState::from_computed(c * c.adjoint());
}

BlochVector bloch_from_density(const CoinState& rho) {
  const Matrix2c& m = rho.matrix();
  return {(pauli_x() * m).trace().real(), (pauli_y() * m).trace().real(),
          (pauli_z() * m).trace().real()};
}

BlochVector bloch_from_density(const Matrix2c& rho) {
  const double herm = hermiticity_defect(rho);
  if (herm >= kHermitianTol) {
    throw ParameterError("bloch_from_density: matrix is not Hermitian");
  }
  return {(pauli_x() * rho).trace().real(), (pauli_y() * rho).trace().real(),
          (pauli_z() * rho).trace().real()};
}

CoinState density_from_bloch(const BlochVector& b) {
  if (!std::isfinite(b.r1) || !std::isfinite(b.r2) || !std::isfinite(b.r3)) {
    throw ParameterError("Bloch vector must be finite");
  }
  if (b.r1 * b.r1 + b.r2 * b.r2 + b.r3 * b.r3 > 1.0 + 1e-12) {
    throw ParameterError("Bloch vector lies outside the unit ball");
  }
  const Matrix2c rho = 0.5 * (identity2() + b.r1 * pauli_x() + b.r2 * pauli_y() + b.r3 * pauli_z());
  return CoinState(rho);
}

FockOperators fock_operators(int dim) {
  if (dim < 2) throw ParameterError("fock_operators: dim must be >= 2");
  FockOperators ops;
  ops.dim = dim;
  ops.a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ops.a_dagger = ops.a.adjoint();
  ops.number_op = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) ops.number_op(n, n) = static_cast<double>(n);
  return ops;
}

}  // namespace qwalk
