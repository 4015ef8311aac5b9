#ifndef QWALK_QCORE_HPP
#define QWALK_QCORE_HPP

// Small dense complex algebra shared by the walk, cavity and asymptotics code.
//
// Coin basis order is (|+>, |->) everywhere, so P+ = diag(1, 0) and
// sigma_3 = diag(1, -1). sigma_2 = [[0, -i], [i, 0]], which makes
// exp(i t sigma_2) the real rotation [[cos t, sin t], [-sin t, cos t]].

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace qwalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;

// Default tolerances for state validation.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-12;

Matrix2c identity2();
Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();
// Projector onto |+> (i = 0) or |-> (i = 1).
Matrix2c coin_projector(int i);

// exp(i pi/4 sigma_2) = (1/sqrt 2) [[1, 1], [-1, 1]].
Matrix2c rotation_u0();

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol);

// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

// Describes why m is not a density matrix at the given tolerances, or nullopt.
std::optional<std::string> density_matrix_defect(const ComplexMatrix& m,
                                                 double herm_tol = kHermitianTol,
                                                 double trace_tol = kTraceTol,
                                                 double pos_tol = kPositivityTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double norm() const;
  std::array<double, 3> as_array() const { return {r1, r2, r3}; }
};

// Density matrix of the two-level coin atom.
class CoinState {
 public:
  // Throws ParameterError unless rho is Hermitian, unit trace and positive
  // within the default tolerances. Negative eigenvalues are reported, not
  // clamped.
  explicit CoinState(const Matrix2c& rho);

  static CoinState maximally_mixed();
  static CoinState pure(const Vector2c& amplitudes);

  // Same checks as the constructor but throws InvariantViolation. Used for
  // states the library computes itself.
  static CoinState from_computed(const Matrix2c& rho, double tol = 1e-10);

  const Matrix2c& matrix() const { return rho_; }
  BlochVector bloch() const;

 private:
  struct Unchecked {};
  CoinState(const Matrix2c& rho, Unchecked) : rho_(rho) {}

  Matrix2c rho_;
};

// |c><c| for |c> = cos(chi)|+> + i sin(chi)|->. Bloch vector (0, sin 2chi, cos 2chi).
CoinState coin_state_from_angle(double chi);
Vector2c coin_vector_from_angle(double chi);

BlochVector bloch_from_density(const CoinState& rho);
// Rejects non-Hermitian input with ParameterError.
BlochVector bloch_from_density(const Matrix2c& rho);
// rho = (1 + r1 s1 + r2 s2 + r3 s3) / 2. Rejects |r| > 1 + 1e-12.
CoinState density_from_bloch(const BlochVector& b);

// Truncated Fock-space ladder operators on span{|0>, ..., |dim-1>}.
struct FockOperators {
  int dim = 0;
  ComplexMatrix a;
  ComplexMatrix a_dagger;
  ComplexMatrix number_op;
};

FockOperators fock_operators(int dim);

}  // namespace qwalk

#endif  // QWALK_QCORE_HPP
