#ifndef QWALK_ASYMPT_HPP
#define QWALK_ASYMPT_HPP

// Long-time behaviour of the walk.
//
// m/n converges weakly to h(phi) with phi uniform on [0, 2 pi). For the V^2
// walk h(phi) = r1 - r3 cos 2phi + r2 sin 2phi in terms of the coin's Bloch
// vector, so the limit law is an arcsine ("double horn") density of
// half-width C = sqrt(r2^2 + r3^2) centred at r1. When C vanishes the
// quadratic spreading is lost and L / sqrt(n) becomes Gaussian.

#include <vector>

#include "qwalk/cavity.hpp"
#include "qwalk/qcore.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Below this amplitude the walk is treated as classical.
inline constexpr double kResonanceThreshold = 1e-12;

enum class HRoute { TRACE_FORMULA, DERIVATIVE, CLOSED_FORM };

// Tr( (sigma + V^dag sigma V + ... + V^dag^{k-1} sigma V^{k-1}) rho ),
// sigma = U0^dagger sigma_3 U0.
double h_trace_formula(const CoinState& coin, int k, double phi);

// -i d/dphi A(k, phi, phi'; coin) at phi' = phi, by central differences.
// fd_step must lie in [1e-7, 1e-3].
double h_derivative(const CoinState& coin, int k, double phi, double fd_step = 1e-5);

// Same derivative but also returns the discarded imaginary part.
struct HDerivativeResult {
  double value = 0.0;
  double imaginary_residue = 0.0;
};
HDerivativeResult h_derivative_detailed(const CoinState& coin, int k, double phi,
                                        double fd_step = 1e-5);

// k = 2 only: r1 - r3 cos 2phi + r2 sin 2phi.
double h_closed_form(const CoinState& coin, double phi);

class HFunction {
 public:
  HFunction(CoinState coin, int k, HRoute route = HRoute::TRACE_FORMULA);
  double operator()(double phi) const;
  const CoinState& coin() const { return coin_; }
  int k() const { return k_; }
  HRoute route() const { return route_; }

 private:
  CoinState coin_;
  int k_;
  HRoute route_;
};

struct DrivenAmplitudes {
  double A_t = 0.0;
  double B_t = 0.0;
  double C_t = 0.0;
  double Lambda_t = 0.0;
};

// A = -cos(2 lt eta) cos^2 chi + cos(2 lt theta) sin^2 chi,
// B = sin(2 chi) cos(lt eta) cos(lt theta), C = hypot(A, B), Lambda = atan2(B, A).
DrivenAmplitudes driven_amplitudes(double chi, double lambda_t, double eta, double theta);
DrivenAmplitudes driven_amplitudes(double chi, const CavityModel& model);

// Arcsine law 1 / (pi sqrt(C^2 - (y - offset)^2)) on [offset - C, offset + C].
class LimitLaw {
 public:
  explicit LimitLaw(double amplitude, double offset = 0.0);

  // Limit law of m/n for the V^2 walk driven by this coin.
  static LimitLaw for_coin(const CoinState& coin);

  double amplitude() const { return amplitude_; }
  double offset() const { return offset_; }
  double lower() const { return offset_ - amplitude_; }
  double upper() const { return offset_ + amplitude_; }
  bool is_degenerate() const { return amplitude_ < kResonanceThreshold; }

  // Zero outside the open support. Throws ParameterError for a degenerate law.
  double pdf(double y) const;
  // Step function at offset for a degenerate law.
  double cdf(double y) const;
  // E[y^s].
  double moment(int s) const;

  // Integral of pdf over the support by tanh-sinh quadrature.
  double normalization() const;

 private:
  double amplitude_;
  double offset_;
};

double limit_pdf(const LimitLaw& law, double y);
double limit_moment(const LimitLaw& law, int s);

// First `count` interaction times with C(t) = 0. chi must be one of
// 0, pi/2, pi, 3pi/2 (mod 2 pi) within 1e-9.
std::vector<double> resonance_times(const CavityModel& model, double chi, int count);

// sup_y |F_emp(y) - F_law(y)| with atoms at y = m / n. Both one-sided limits of
// the empirical CDF are compared at each atom, which gives the exact supremum.
double ks_distance(const PositionDistribution& dist, int n, const LimitLaw& law);

}  // namespace qwalk

#endif  // QWALK_ASYMPT_HPP
