#ifndef QWALK_TESTS_ORACLES_HPP
#define QWALK_TESTS_ORACLES_HPP

// Reference computations used only by the tests. They rebuild every operator
// densely from its textbook definition and share no code path with the
// library engines they check.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Window of positions [-half, half]; index = position + half.
inline Mat shift(int half, int direction) {
  const int w = 2 * half + 1;
  Mat e = Mat::Zero(w, w);
  for (int i = 0; i < w; ++i) {
    const int j = i + direction;
    if (j >= 0 && j < w) e(j, i) = 1.0;
  }
  return e;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat u0() {
  const double c = std::cos(M_PI / 4);
  const double s = std::sin(M_PI / 4);
  Mat u(2, 2);
  u << c, s, -s, c;
  return u;
}

inline Mat projector(int i) {
  Mat p = Mat::Zero(2, 2);
  p(i, i) = 1.0;
  return p;
}

// V = P+ U0 (x) E+ + P- U0 (x) E- on coin (x) window.
inline Mat walk_unitary(int half) {
  return kron(projector(0) * u0(), shift(half, +1)) + kron(projector(1) * u0(), shift(half, -1));
}

inline Mat partial_trace_coin(const Mat& joint, int w) {
  return joint.block(0, 0, w, w) + joint.block(w, w, w, w);
}

// n steps of Tr_C(V^k (coin (x) rho) V^k^dagger) from |0><0|, on [-half, half].
inline Mat evolve(const Mat& coin, int k, int n, int half) {
  const int w = 2 * half + 1;
  Mat rho = Mat::Zero(w, w);
  rho(half, half) = 1.0;
  const Mat v = walk_unitary(half);
  Mat vk = Mat::Identity(2 * w, 2 * w);
  for (int i = 0; i < k; ++i) vk = v * vk;
  for (int s = 0; s < n; ++s) {
    const Mat joint = vk * kron(coin, rho) * vk.adjoint();
    rho = partial_trace_coin(joint, w);
  }
  return rho;
}

inline std::map<int, double> distribution(const Mat& rho, int half) {
  std::map<int, double> out;
  for (int i = 0; i < rho.rows(); ++i) out[i - half] = rho(i, i).real();
  return out;
}

// sup over a fine y grid, plus both one-sided limits at every atom.
inline double ks_brute_force(const std::map<int, double>& dist, int n, double amplitude) {
  auto law_cdf = [&](double y) {
    if (y <= -amplitude) return 0.0;
    if (y >= amplitude) return 1.0;
    return 0.5 + std::asin(y / amplitude) / M_PI;
  };
  auto emp_cdf = [&](double y, bool inclusive) {
    double f = 0.0;
    for (const auto& [m, p] : dist) {
      const double ym = static_cast<double>(m) / n;
      if (ym < y || (inclusive && ym == y)) f += p;
    }
    return f;
  };
  double worst = 0.0;
  double lo = -amplitude - 1.0;
  double hi = amplitude + 1.0;
  for (const auto& [m, p] : dist) {
    lo = std::min(lo, static_cast<double>(m) / n - 1.0);
    hi = std::max(hi, static_cast<double>(m) / n + 1.0);
  }
  const int steps = 20000;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + (hi - lo) * i / steps;
    worst = std::max(worst, std::abs(emp_cdf(y, true) - law_cdf(y)));
  }
  for (const auto& [m, p] : dist) {
    if (p == 0.0) continue;
    const double y = static_cast<double>(m) / n;
    worst = std::max(worst, std::abs(emp_cdf(y, true) - law_cdf(y)));
    worst = std::max(worst, std::abs(emp_cdf(y, false) - law_cdf(y)));
  }
  return worst;
}

// Random density matrix on C^2 with Bloch vector drawn uniformly from the ball.
inline Mat random_coin(std::mt19937_64& rng, double* r_out = nullptr) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double x = normal(rng), y = normal(rng), z = normal(rng);
  const double len = std::sqrt(x * x + y * y + z * z);
  const double radius = std::cbrt(uni(rng));
  x *= radius / len;
  y *= radius / len;
  z *= radius / len;
  if (r_out) {
    r_out[0] = x;
    r_out[1] = y;
    r_out[2] = z;
  }
  Mat rho(2, 2);
  rho << 0.5 * (1 + z), 0.5 * cd(x, -y), 0.5 * cd(x, y), 0.5 * (1 - z);
  return rho;
}

}  // namespace oracle

#endif  // QWALK_TESTS_ORACLES_HPP
