// Phase-basis route to the position distribution.
//
// With |phi~> = sum_n e^{-i n phi} |n>, one step multiplies the dyad
// |phi~><phi'~| by the characteristic function A(phi, phi'), so
//
//   rho_hat(phi, phi') A(phi, phi')^n = sum_{a,b} rho^(n)_{ab} e^{i a phi} e^{-i b phi'}.
//
// Sampling on a uniform G-point grid and projecting onto e^{-i m phi} e^{i m phi'}
// returns sum over a, b = m (mod G) of rho^(n)_{ab}, which is P_m exactly once
// G covers the whole reachable window.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

// e^{i 2 pi j / g} with the phase index reduced first to keep it accurate.
Complex grid_phase(long j, int g) {
  long r = j % g;
  if (r < 0) r += g;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(g));
}

Complex int_power(Complex base, int exponent) {
  Complex result(1.0, 0.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

int reachable_width(const WalkConfig& config) {
  return config.initial_walker.size() + 2 * config.k * config.n_steps;
}

}  // namespace

Matrix2c phase_step_matrix(double phi) {
  Matrix2c d = Matrix2c::Zero();
  d(0, 0) = std::polar(1.0, phi);
  d(1, 1) = std::polar(1.0, -phi);
  return d * rotation_u0();
}

Complex characteristic_function(const CoinState& coin, int k, double phi, double phi_prime) {
  if (k < 1) throw ParameterError("k must be >= 1");
  const Matrix2c v = phase_step_matrix(phi);
  const Matrix2c vp = phase_step_matrix(phi_prime);
  Matrix2c vk = Matrix2c::Identity();
  Matrix2c vpk = Matrix2c::Identity();
  for (int i = 0; i < k; ++i) {
    vk = v * vk;
    vpk = vp * vpk;
  }
  return (vk * coin.matrix() * vpk.adjoint()).trace();
}

int minimum_grid_points(const WalkConfig& config) { return reachable_width(config); }

int default_grid_points(const WalkConfig& config) {
  return std::max(4 * config.k * config.n_steps + 4, minimum_grid_points(config));
}

PositionDistribution distribution_via_phase(const WalkConfig& config, int grid_points) {
  if (config.k < 1) throw ParameterError("k must be >= 1");
  if (config.n_steps < 0) throw ParameterError("n_steps must be >= 0");
  const int g = grid_points;
  const int width = reachable_width(config);
  if (g < width) {
    std::ostringstream msg;
    msg << "insufficient phase grid: " << g << " points cannot resolve " << width << " positions";
    throw ParameterError(msg.str());
  }

  const WalkerState& init = config.initial_walker;
  const int w0 = init.size();
  const int first = init.first_position() - config.k * config.n_steps;

  // F(i, a) = e^{i a phi_i}; rho_hat = F rho F^dagger.
  ComplexMatrix f(g, w0);
  for (int i = 0; i < g; ++i) {
    for (int a = 0; a < w0; ++a) {
      f(i, a) = grid_phase(static_cast<long>(i) * (init.offset() + a), g);
    }
  }
  ComplexMatrix weights = f * init.matrix() * f.adjoint();

  // Characteristic function depends on phi, phi' only through V(phi)^k,
  // so tabulate the k-th powers once per grid point.
  std::vector<Matrix2c> vk(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    const Matrix2c v = phase_step_matrix(2.0 * kPi * i / g);
    Matrix2c p = Matrix2c::Identity();
    for (int s = 0; s < config.k; ++s) p = v * p;
    vk[static_cast<std::size_t>(i)] = p;
  }
  const Matrix2c& rc = config.coin.matrix();
  for (int i = 0; i < g; ++i) {
    const Matrix2c left = vk[static_cast<std::size_t>(i)] * rc;
    for (int j = 0; j < g; ++j) {
      const Complex a = (left * vk[static_cast<std::size_t>(j)].adjoint()).trace();
      weights(i, j) *= int_power(a, config.n_steps);
    }
  }

  // E(i, m) = e^{i m phi_i}; P_m = (E^dagger W E)_{mm} / G^2.
  ComplexMatrix e(g, width);
  for (int i = 0; i < g; ++i) {
    for (int m = 0; m < width; ++m) e(i, m) = grid_phase(static_cast<long>(i) * (first + m), g);
  }
  const ComplexMatrix we = weights * e;
  const double norm = 1.0 / (static_cast<double>(g) * g);
  std::vector<double> p(static_cast<std::size_t>(width));
  double total = 0.0;
  for (int m = 0; m < width; ++m) {
    p[static_cast<std::size_t>(m)] = (e.col(m).adjoint() * we.col(m)).value().real() * norm;
    total += p[static_cast<std::size_t>(m)];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "insufficient phase grid: probability sum drifted to " << total;
    throw ParameterError(msg.str());
  }
  for (double& v : p) v /= total;
  return PositionDistribution(first, std::move(p));
}

}  // namespace qwalk
