#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr int kShift[2] = {+1, -1};

// Joint coin (x) walker operator stored as 2x2 blocks, block(c, d) = <c| X |d>,
// with scratch space for the next application.
struct JointBlocks {
  ComplexMatrix b[2][2];
  ComplexMatrix scratch[2];
};

// X -> V X. U0 is real, E+ moves row i to i + 1 and E- moves it to i - 1;
// rows pushed past the block edge are zero by construction.
void apply_v_left(JointBlocks& x, const Eigen::Matrix2d& u0) {
  for (int d = 0; d < 2; ++d) {
    ComplexMatrix& a = x.b[0][d];
    ComplexMatrix& b = x.b[1][d];
    const Eigen::Index n = a.rows();
    ComplexMatrix& plus = x.scratch[0];
    ComplexMatrix& minus = x.scratch[1];
    plus.resize(n, a.cols());
    minus.resize(n, a.cols());
    plus.row(0).setZero();
    plus.bottomRows(n - 1).noalias() = u0(0, 0) * a.topRows(n - 1) + u0(0, 1) * b.topRows(n - 1);
    minus.row(n - 1).setZero();
    minus.topRows(n - 1).noalias() = u0(1, 0) * a.bottomRows(n - 1) + u0(1, 1) * b.bottomRows(n - 1);
    a.swap(plus);
    b.swap(minus);
  }
}

// X -> X V^dagger, the column analogue of apply_v_left.
void apply_vdag_right(JointBlocks& x, const Eigen::Matrix2d& u0) {
  for (int c = 0; c < 2; ++c) {
    ComplexMatrix& a = x.b[c][0];
    ComplexMatrix& b = x.b[c][1];
    const Eigen::Index n = a.cols();
    ComplexMatrix& plus = x.scratch[0];
    ComplexMatrix& minus = x.scratch[1];
    plus.resize(a.rows(), n);
    minus.resize(a.rows(), n);
    plus.col(0).setZero();
    plus.rightCols(n - 1).noalias() = u0(0, 0) * a.leftCols(n - 1) + u0(0, 1) * b.leftCols(n - 1);
    minus.col(n - 1).setZero();
    minus.leftCols(n - 1).noalias() = u0(1, 0) * a.rightCols(n - 1) + u0(1, 1) * b.rightCols(n - 1);
    a.swap(plus);
    b.swap(minus);
  }
}

void require_k(int k) {
  if (k < 1) throw ParameterError("k must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------------------
// WalkerState

WalkerState::WalkerState(int offset, ComplexMatrix rho) : offset_(offset), rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw ParameterError("walker density matrix must be square and non-empty");
  }
  if (!rho_.allFinite()) throw ParameterError("walker density matrix has non-finite entries");
  const double herm = hermiticity_defect(rho_);
  if (herm >= kHermitianTol) {
    std::ostringstream msg;
    msg << "walker density matrix is not Hermitian (defect " << herm << ")";
    throw ParameterError(msg.str());
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) >= kTraceTol) {
    std::ostringstream msg;
    msg << "walker density matrix trace " << tr.real() << " != 1";
    throw ParameterError(msg.str());
  }
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    if (rho_(i, i).real() < -kPositivityTol) {
      throw ParameterError("walker density matrix has a negative diagonal entry");
    }
  }
}

WalkerState WalkerState::localized(int position) {
  ComplexMatrix rho = ComplexMatrix::Zero(1, 1);
  rho(0, 0) = 1.0;
  return WalkerState(position, std::move(rho), Unchecked{});
}

WalkerState WalkerState::from_distribution(int offset, const std::vector<double>& diag) {
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                          static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return WalkerState(offset, std::move(rho));
}

Complex WalkerState::at(int a, int b) const {
  const int i = a - offset_;
  const int j = b - offset_;
  if (i < 0 || j < 0 || i >= size() || j >= size()) return 0.0;
  return rho_(i, j);
}

WalkerState WalkerState::padded(int left, int right) const {
  if (left < 0 || right < 0) throw ParameterError("padding must be nonnegative");
  const int n = size() + left + right;
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  rho.block(left, left, size(), size()) = rho_;
  return WalkerState(offset_ - left, std::move(rho), Unchecked{});
}

std::optional<std::pair<int, int>> WalkerState::support() const {
  int lo = -1;
  int hi = -1;
  for (int i = 0; i < size(); ++i) {
    if (rho_(i, i) != Complex(0.0, 0.0)) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  if (lo < 0) return std::nullopt;
  return std::make_pair(offset_ + lo, offset_ + hi);
}

bool WalkerState::boundary_is_zero() const {
  const Eigen::Index n = rho_.rows();
  if (n < 2) return false;
  return rho_.row(0).isZero(0.0) && rho_.row(n - 1).isZero(0.0) && rho_.col(0).isZero(0.0) &&
         rho_.col(n - 1).isZero(0.0);
}

double WalkerState::min_eigenvalue() const { return min_hermitian_eigenvalue(rho_); }

// ---------------------------------------------------------------------------
// PositionDistribution

PositionDistribution::PositionDistribution(int offset, std::vector<double> probabilities)
    : offset_(offset), p_(std::move(probabilities)) {}

double PositionDistribution::probability(int m) const {
  const long i = static_cast<long>(m) - offset_;
  if (i < 0 || i >= static_cast<long>(p_.size())) return 0.0;
  return p_[static_cast<std::size_t>(i)];
}

double PositionDistribution::total() const {
  double sum = 0.0;
  for (double p : p_) sum += p;
  return sum;
}

double PositionDistribution::max_abs_diff(const PositionDistribution& other) const {
  if (p_.empty() && other.p_.empty()) return 0.0;
  int lo = std::min(p_.empty() ? other.first_position() : first_position(),
                    other.p_.empty() ? first_position() : other.first_position());
  int hi = std::max(p_.empty() ? other.last_position() : last_position(),
                    other.p_.empty() ? last_position() : other.last_position());
  double worst = 0.0;
  for (int m = lo; m <= hi; ++m) {
    worst = std::max(worst, std::abs(probability(m) - other.probability(m)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Explicit operators

ComplexMatrix substep_unitary(int window_size, int offset) {
  (void)offset;  // the matrix depends only on relative positions
  if (window_size < 3) {
    throw ParameterError("substep_unitary: window must hold at least 3 positions");
  }
  const Matrix2c u0 = rotation_u0();
  const int w = window_size;
  ComplexMatrix v = ComplexMatrix::Zero(2 * w, 2 * w);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      for (int i = 0; i < w; ++i) {
        const int target = i + kShift[c];
        if (target < 0 || target >= w) continue;
        v(c * w + target, d * w + i) = u0(c, d);
      }
    }
  }
  return v;
}

std::pair<ComplexMatrix, ComplexMatrix> kraus_pair(const Vector2c& coin, int k, int window_size,
                                                   int offset) {
  require_k(k);
  const ComplexMatrix v = substep_unitary(window_size, offset);
  ComplexMatrix vk = ComplexMatrix::Identity(v.rows(), v.cols());
  for (int i = 0; i < k; ++i) vk = v * vk;
  const ComplexMatrix embed = kron(coin, ComplexMatrix::Identity(window_size, window_size));
  const ComplexMatrix full = vk * embed;
  return {full.topRows(window_size), full.bottomRows(window_size)};
}

// ---------------------------------------------------------------------------
// Channel

WalkerState step_channel_unchecked(const WalkerState& rho_w, const CoinState& coin, int k) {
  const auto supp = rho_w.support();
  if (!supp) throw InvariantViolation("walker state has no support");
  const int lo = supp->first;
  const int hi = supp->second;

  // The result occupies [lo - k, hi + k]; keep one zero row/column beyond it.
  const int need_left = std::max(0, rho_w.first_position() - (lo - k - 1));
  const int need_right = std::max(0, (hi + k + 1) - rho_w.last_position());
  const int out_offset = rho_w.first_position() - need_left;
  const int out_size = rho_w.size() + need_left + need_right;

  const int span = hi - lo + 1;
  const int active = span + 2 * k;
  ComplexMatrix sub = ComplexMatrix::Zero(active, active);
  sub.block(k, k, span, span) =
      rho_w.matrix().block(lo - rho_w.offset(), lo - rho_w.offset(), span, span);

  const Matrix2c& rc = coin.matrix();
  JointBlocks x;
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) x.b[c][d] = rc(c, d) * sub;
  }
  const Eigen::Matrix2d u0 = rotation_u0().real();
  for (int i = 0; i < k; ++i) apply_v_left(x, u0);
  for (int i = 0; i < k; ++i) apply_vdag_right(x, u0);

  ComplexMatrix out = ComplexMatrix::Zero(out_size, out_size);
  const int start = (lo - k) - out_offset;
  out.block(start, start, active, active) = x.b[0][0] + x.b[1][1];
  return WalkerState(out_offset, std::move(out), WalkerState::Unchecked{});
}

void check_step_invariants(const WalkerState& before, const WalkerState& after, int step) {
  const double drift = std::abs(after.matrix().trace() - before.matrix().trace());
  if (drift >= 1e-12) {
    std::ostringstream msg;
    msg << "trace drift " << drift << " at step " << step;
    throw InvariantViolation(msg.str());
  }
  if (!after.boundary_is_zero()) {
    std::ostringstream msg;
    msg << "walker amplitude reached the window boundary at step " << step;
    throw InvariantViolation(msg.str());
  }
}

WalkerState step_channel(const WalkerState& rho_w, const CoinState& coin, int k) {
  require_k(k);
  WalkerState next = step_channel_unchecked(rho_w, coin, k);
  check_step_invariants(rho_w, next, 1);
  return next;
}

WalkerState prepare_window(const WalkConfig& config) {
  require_k(config.k);
  if (config.n_steps < 0) throw ParameterError("n_steps must be >= 0");
  if (config.n_steps == 0) return config.initial_walker;
  const long reach = static_cast<long>(config.k) * config.n_steps + 2;
  if (reach > 100000) throw ParameterError("k * n_steps is too large for a dense walker window");
  return config.initial_walker.padded(static_cast<int>(reach), static_cast<int>(reach));
}

WalkerState evolve(const WalkConfig& config) {
  return evolve(config, [](int, const WalkerState&) {});
}

// ---------------------------------------------------------------------------
// Statistics

PositionDistribution position_distribution(const WalkerState& rho_w) {
  std::vector<double> p(static_cast<std::size_t>(rho_w.size()));
  for (int i = 0; i < rho_w.size(); ++i) p[static_cast<std::size_t>(i)] = rho_w.matrix()(i, i).real();
  return PositionDistribution(rho_w.offset(), std::move(p));
}

double scaled_moment(const PositionDistribution& dist, int s, int n, double exponent) {
  if (n < 1) throw ParameterError("scaled_moment: n must be >= 1");
  if (s < 0) throw ParameterError("scaled_moment: s must be >= 0");
  const double scale = std::pow(static_cast<double>(n), exponent);
  double sum = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double y = static_cast<double>(dist.offset() + static_cast<int>(i)) / scale;
    sum += std::pow(y, s) * dist.probabilities()[i];
  }
  return sum;
}

double position_variance(const PositionDistribution& dist) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double m = static_cast<double>(dist.offset() + static_cast<int>(i));
    m1 += m * dist.probabilities()[i];
    m2 += m * m * dist.probabilities()[i];
  }
  return m2 - m1 * m1;
}

}  // namespace qwalk
