#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

// V^k quantum walk on the integer line.
//
// One step: V = P+ U0 (x) E+ + P- U0 (x) E-, applied k times to
// coin (x) walker, followed by a partial trace over the coin. The coin is
// re-prepared in the same state before every step.
//
// Two independent engines are provided: evolve() works on the walker density
// matrix in the position basis, distribution_via_phase() works with the
// characteristic function on a grid of phases.

#include <cstdint>
#include <utility>
#include <vector>

#include "qwalk/qcore.hpp"

namespace qwalk {

// Walker density matrix on the position window [offset, offset + size).
class WalkerState {
 public:
  // Validates Hermiticity, unit trace and a nonnegative diagonal. Full
  // positivity is checked on demand via min_eigenvalue().
  WalkerState(int offset, ComplexMatrix rho);

  static WalkerState localized(int position);
  static WalkerState from_distribution(int offset, const std::vector<double>& diag);

  int offset() const { return offset_; }
  int size() const { return static_cast<int>(rho_.rows()); }
  int first_position() const { return offset_; }
  int last_position() const { return offset_ + size() - 1; }
  const ComplexMatrix& matrix() const { return rho_; }

  // Matrix element <a|rho|b> by absolute positions; zero outside the window.
  Complex at(int a, int b) const;

  // Same state embedded in a window widened by `left` and `right` positions.
  WalkerState padded(int left, int right) const;

  // Positions [lo, hi] holding nonzero probability, or nullopt when the
  // diagonal is identically zero.
  std::optional<std::pair<int, int>> support() const;

  bool boundary_is_zero() const;
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  WalkerState(int offset, ComplexMatrix rho, Unchecked) : offset_(offset), rho_(std::move(rho)) {}
  friend WalkerState step_channel_unchecked(const WalkerState&, const CoinState&, int);

  int offset_;
  ComplexMatrix rho_;
};

class PositionDistribution {
 public:
  PositionDistribution() = default;
  PositionDistribution(int offset, std::vector<double> probabilities);

  int offset() const { return offset_; }
  int first_position() const { return offset_; }
  int last_position() const { return offset_ + static_cast<int>(p_.size()) - 1; }
  const std::vector<double>& probabilities() const { return p_; }
  std::size_t size() const { return p_.size(); }

  // Zero outside the stored range.
  double probability(int m) const;
  double total() const;

  // Largest |P_m - other.P_m| over the union of both ranges.
  double max_abs_diff(const PositionDistribution& other) const;

 private:
  int offset_ = 0;
  std::vector<double> p_;
};

struct WalkConfig {
  int k = 2;
  int n_steps = 0;
  CoinState coin = coin_state_from_angle(0.0);
  WalkerState initial_walker = WalkerState::localized(0);
};

// Explicit V on coin (x) walker for positions [offset, offset + window_size).
// Index of |c, m> is c * window_size + (m - offset), c = 0 for |+>.
// Amplitude shifted past the window edge is dropped, so V is unitary only on
// the interior rows/columns.
ComplexMatrix substep_unitary(int window_size, int offset);

// Kraus pair A_c = <c| V^k |coin> restricted to a window, for a pure coin.
// Returned in the order (A+, A-).
std::pair<ComplexMatrix, ComplexMatrix> kraus_pair(const Vector2c& coin, int k, int window_size,
                                                   int offset);

// Tr_C( V^k (coin (x) rho_w) V^k^dagger ). The window grows when needed so
// the result keeps a zero boundary.
WalkerState step_channel(const WalkerState& rho_w, const CoinState& coin, int k);

WalkerState evolve(const WalkConfig& config);

// Calls on_step(step, state) after every step (step = 1..n_steps).
template <typename OnStep>
WalkerState evolve(const WalkConfig& config, OnStep&& on_step);

PositionDistribution position_distribution(const WalkerState& rho_w);

// sum_m (m / n^exponent)^s P_m.
double scaled_moment(const PositionDistribution& dist, int s, int n, double exponent);

// Unscaled variance sum m^2 P_m - (sum m P_m)^2.
double position_variance(const PositionDistribution& dist);

// A(k, phi, phi'; rho_c) = Tr( V(phi)^k rho_c V(phi')^k^dagger ),
// V(phi) = diag(e^{i phi}, e^{-i phi}) U0.
Complex characteristic_function(const CoinState& coin, int k, double phi, double phi_prime);
Matrix2c phase_step_matrix(double phi);

// Smallest grid that reproduces every position exactly.
int minimum_grid_points(const WalkConfig& config);
// Grid size used when the caller has no preference: max(4 k n + 4, minimum).
int default_grid_points(const WalkConfig& config);

// Raises the characteristic function to the n-th power on a uniform phase
// grid and inverts the double Fourier transform. Throws ParameterError
// when the grid is too coarse.
PositionDistribution distribution_via_phase(const WalkConfig& config, int grid_points);

// --- implementation of the templated evolve ---

WalkerState prepare_window(const WalkConfig& config);
WalkerState step_channel_unchecked(const WalkerState& rho_w, const CoinState& coin, int k);
void check_step_invariants(const WalkerState& before, const WalkerState& after, int step);

template <typename OnStep>
WalkerState evolve(const WalkConfig& config, OnStep&& on_step) {
  WalkerState state = prepare_window(config);
  for (int step = 1; step <= config.n_steps; ++step) {
    WalkerState next = step_channel_unchecked(state, config.coin, config.k);
    check_step_invariants(state, next, step);
    state = std::move(next);
    on_step(step, static_cast<const WalkerState&>(state));
  }
  return state;
}

}  // namespace qwalk

#endif  // QWALK_WALK_HPP
