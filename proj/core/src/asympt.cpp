#include "qwalk/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

void require_k(int k) {
  if (k < 1) throw ParameterError("k must be >= 1");
}

// Moments of the standard arcsine law on [-1, 1].
double unit_arcsine_moment(int s) {
  if (s % 2 != 0) return 0.0;
  return boost::math::binomial_coefficient<double>(static_cast<unsigned>(s),
                                                   static_cast<unsigned>(s / 2)) /
         std::ldexp(1.0, s);
}

}  // namespace

// ---------------------------------------------------------------------------
// h(phi)

double h_trace_formula(const CoinState& coin, int k, double phi) {
  require_k(k);
  const Matrix2c u0 = rotation_u0();
  const Matrix2c sigma = u0.adjoint() * pauli_z() * u0;
  const Matrix2c v = phase_step_matrix(phi);
  Matrix2c vj = Matrix2c::Identity();
  Matrix2c total = Matrix2c::Zero();
  for (int j = 0; j < k; ++j) {
    total += vj.adjoint() * sigma * vj;
    vj = v * vj;
  }
  return (total * coin.matrix()).trace().real();
}

HDerivativeResult h_derivative_detailed(const CoinState& coin, int k, double phi, double fd_step) {
  require_k(k);
  if (!(fd_step >= 1e-7 && fd_step <= 1e-3)) {
    throw ParameterError("h_derivative: fd_step must lie in [1e-7, 1e-3]");
  }
  const Complex ahead = characteristic_function(coin, k, phi + fd_step, phi);
  const Complex behind = characteristic_function(coin, k, phi - fd_step, phi);
  const Complex slope = (ahead - behind) / (2.0 * fd_step);
  const Complex h = Complex(0.0, -1.0) * slope;
  return {h.real(), h.imag()};
}

double h_derivative(const CoinState& coin, int k, double phi, double fd_step) {
  return h_derivative_detailed(coin, k, phi, fd_step).value;
}

double h_closed_form(const CoinState& coin, double phi) {
  const BlochVector b = coin.bloch();
  return b.r1 - b.r3 * std::cos(2.0 * phi) + b.r2 * std::sin(2.0 * phi);
}

HFunction::HFunction(CoinState coin, int k, HRoute route)
    : coin_(std::move(coin)), k_(k), route_(route) {
  require_k(k);
  if (route == HRoute::CLOSED_FORM && k != 2) {
    throw ParameterError("closed-form h is only available for k = 2");
  }
}

double HFunction::operator()(double phi) const {
  switch (route_) {
    case HRoute::TRACE_FORMULA:
      return h_trace_formula(coin_, k_, phi);
    case HRoute::DERIVATIVE:
      return h_derivative(coin_, k_, phi);
    case HRoute::CLOSED_FORM:
      return h_closed_form(coin_, phi);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Driven amplitudes

DrivenAmplitudes driven_amplitudes(double chi, double lambda_t, double eta, double theta) {
  const double c2 = std::cos(chi) * std::cos(chi);
  const double s2 = std::sin(chi) * std::sin(chi);
  DrivenAmplitudes out;
  out.A_t = -std::cos(2.0 * lambda_t * eta) * c2 + std::cos(2.0 * lambda_t * theta) * s2;
  out.B_t = std::sin(2.0 * chi) * std::cos(lambda_t * eta) * std::cos(lambda_t * theta);
  out.C_t = std::hypot(out.A_t, out.B_t);
  out.Lambda_t = std::atan2(out.B_t, out.A_t);
  return out;
}

DrivenAmplitudes driven_amplitudes(double chi, const CavityModel& model) {
  const EtaTheta et = eta_theta(model);
  return driven_amplitudes(chi, model.lambda_t(), et.eta, et.theta);
}

// ---------------------------------------------------------------------------
// Limit law

LimitLaw::LimitLaw(double amplitude, double offset) : amplitude_(amplitude), offset_(offset) {
  if (!std::isfinite(amplitude) || amplitude < 0.0) {
    throw ParameterError("limit law amplitude must be finite and >= 0");
  }
  if (!std::isfinite(offset)) throw ParameterError("limit law offset must be finite");
}

LimitLaw LimitLaw::for_coin(const CoinState& coin) {
  const BlochVector b = coin.bloch();
  return LimitLaw(std::hypot(b.r2, b.r3), b.r1);
}

double LimitLaw::pdf(double y) const {
  if (is_degenerate()) {
    throw ParameterError("limit law is degenerate (C = 0): use the classical branch");
  }
  const double z = y - offset_;
  if (!(z > -amplitude_ && z < amplitude_)) return 0.0;
  return 1.0 / (kPi * std::sqrt((amplitude_ - z) * (amplitude_ + z)));
}

double LimitLaw::cdf(double y) const {
  const double z = y - offset_;
  if (is_degenerate()) return z >= 0.0 ? 1.0 : 0.0;
  const double x = std::clamp(z / amplitude_, -1.0, 1.0);
  return std::clamp(0.5 + std::asin(x) / kPi, 0.0, 1.0);
}

double LimitLaw::moment(int s) const {
  if (s < 0) throw ParameterError("moment order must be >= 0");
  double sum = 0.0;
  for (int j = 0; j <= s; j += 2) {
    const double binom = boost::math::binomial_coefficient<double>(static_cast<unsigned>(s),
                                                                   static_cast<unsigned>(j));
    sum += binom * std::pow(offset_, s - j) * std::pow(amplitude_, j) * unit_arcsine_moment(j);
  }
  return sum;
}

double LimitLaw::normalization() const {
  if (is_degenerate()) {
    throw ParameterError("limit law is degenerate (C = 0): use the classical branch");
  }
  // tanh-sinh hands over the distance to the nearer endpoint, so the
  // inverse-square-root factors keep full precision next to the edges.
  const double width = 2.0 * amplitude_;
  auto integrand = [width](double, double gap) {
    const double to_lower = gap < 0.0 ? -gap : width - gap;
    const double to_upper = gap < 0.0 ? width + gap : gap;
    return 1.0 / (kPi * std::sqrt(to_lower * to_upper));
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(integrand, lower(), upper());
}

double limit_pdf(const LimitLaw& law, double y) { return law.pdf(y); }

double limit_moment(const LimitLaw& law, int s) { return law.moment(s); }

// ---------------------------------------------------------------------------
// Resonance

std::vector<double> resonance_times(const CavityModel& model, double chi, int count) {
  model.validate();
  if (count < 1) throw ParameterError("resonance_times: count must be >= 1");
  if (!std::isfinite(chi)) throw ParameterError("resonance_times: chi must be finite");

  double reduced = std::fmod(chi, 2.0 * kPi);
  if (reduced < 0.0) reduced += 2.0 * kPi;
  static constexpr double kQuarterTurns[] = {0.0, kPi / 2, kPi, 3 * kPi / 2, 2 * kPi};
  int quarter = -1;
  for (int q = 0; q < 5; ++q) {
    if (std::abs(reduced - kQuarterTurns[q]) <= 1e-9) quarter = q % 4;
  }
  if (quarter < 0) throw ParameterError("resonance requires B(t)=0 coin (chi in {0, pi/2, pi, 3pi/2})");

  const EtaTheta et = eta_theta(model);
  const bool excited = quarter % 2 == 0;  // coin along |+>
  const double rate = excited ? et.eta : et.theta;
  if (!(rate > 0.0)) throw ParameterError("no finite resonance time (theta = 0 for this model)");

  const double snapped_chi = kQuarterTurns[quarter];
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double t = (2.0 * j + 1.0) * kPi / (4.0 * model.lambda * rate);
    const DrivenAmplitudes amp = driven_amplitudes(snapped_chi, model.lambda * t, et.eta, et.theta);
    if (!(amp.C_t < kResonanceThreshold)) {
      std::ostringstream msg;
      msg << "resonance time " << t << " leaves C(t) = " << amp.C_t;
      throw InvariantViolation(msg.str());
    }
    times.push_back(t);
  }
  return times;
}

// ---------------------------------------------------------------------------
// Convergence diagnostics

double ks_distance(const PositionDistribution& dist, int n, const LimitLaw& law) {
  if (n < 1) throw ParameterError("ks_distance: n must be >= 1");
  if (law.is_degenerate()) throw ParameterError("ks_distance: limit law must have C > 0");
  double cumulative = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.probabilities()[i];
    if (p == 0.0) continue;
    const double y = static_cast<double>(dist.offset() + static_cast<int>(i)) / n;
    const double target = law.cdf(y);
    worst = std::max(worst, std::abs(cumulative - target));
    cumulative += p;
    worst = std::max(worst, std::abs(cumulative - target));
  }
  return std::min(worst, 1.0);
}

}  // namespace qwalk
