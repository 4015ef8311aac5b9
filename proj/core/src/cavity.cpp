#include "qwalk/cavity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

// (r + m)! / r! as a running product.
double rising_ratio(int r, int m) {
  double out = 1.0;
  for (int j = 1; j <= m; ++j) out *= static_cast<double>(r + j);
  return out;
}

// r! / (r - m)!, zero when r < m.
double falling_ratio(int r, int m) {
  if (r < m) return 0.0;
  double out = 1.0;
  for (int j = 0; j < m; ++j) out *= static_cast<double>(r - j);
  return out;
}

}  // namespace

std::string_view variant_name(CavityVariant v) {
  switch (v) {
    case CavityVariant::JCM:
      return "jcm";
    case CavityVariant::ID_JCM:
      return "id";
    case CavityVariant::TWO_PHOTON:
      return "2ph";
    case CavityVariant::M_PHOTON:
      return "mph";
  }
  return "?";
}

CavityVariant parse_variant(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "jcm") return CavityVariant::JCM;
  if (s == "id" || s == "id-jcm" || s == "id_jcm") return CavityVariant::ID_JCM;
  if (s == "2ph" || s == "2ph-jcm" || s == "two_photon") return CavityVariant::TWO_PHOTON;
  if (s == "mph" || s == "mph-jcm" || s == "m_photon") return CavityVariant::M_PHOTON;
  throw ParameterError("unknown cavity model '" + std::string(name) + "' (expected jcm|id|2ph|mph)");
}

int CavityModel::multiplicity() const {
  switch (variant) {
    case CavityVariant::JCM:
    case CavityVariant::ID_JCM:
      return 1;
    case CavityVariant::TWO_PHOTON:
      return 2;
    case CavityVariant::M_PHOTON:
      return m;
  }
  return m;
}

void CavityModel::validate() const {
  if (m < 1) throw ParameterError("cavity: m must be >= 1");
  if (r < 0) throw ParameterError("cavity: r must be >= 0");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw ParameterError("cavity: lambda must be > 0");
  if (!std::isfinite(t) || t < 0.0) throw ParameterError("cavity: t must be >= 0");
  if (!std::isfinite(omega) || omega < 0.0) throw ParameterError("cavity: omega must be >= 0");
  if (m != multiplicity()) {
    throw ParameterError("cavity: m=" + std::to_string(m) + " is inconsistent with model " +
                         std::string(variant_name(variant)));
  }
}

CavityModel make_cavity(CavityVariant variant, int r, double lambda, double t, int m) {
  CavityModel model;
  model.variant = variant;
  model.r = r;
  model.lambda = lambda;
  model.t = t;
  switch (variant) {
    case CavityVariant::JCM:
    case CavityVariant::ID_JCM:
      model.m = 1;
      break;
    case CavityVariant::TWO_PHOTON:
      model.m = 2;
      break;
    case CavityVariant::M_PHOTON:
      model.m = m;
      break;
  }
  model.validate();
  return model;
}

EtaTheta eta_theta(const CavityModel& model) {
  model.validate();
  const double r = model.r;
  switch (model.variant) {
    case CavityVariant::JCM:
      return {std::sqrt(r + 1.0), std::sqrt(r)};
    case CavityVariant::ID_JCM:
      return {r + 1.0, r};
    case CavityVariant::TWO_PHOTON:
      return {std::sqrt((r + 1.0) * (r + 2.0)), std::sqrt(r * (r - 1.0))};
    case CavityVariant::M_PHOTON:
      return {std::sqrt(rising_ratio(model.r, model.m)), std::sqrt(falling_ratio(model.r, model.m))};
  }
  return {};
}

double KrausSet::completeness_defect() const {
  if (operators.empty()) return 1.0;
  const Eigen::Index d = operators.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& a : operators) sum += a.adjoint() * a;
  return max_abs_diff(sum, ComplexMatrix::Identity(d, d));
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& a : operators) out += a * rho * a.adjoint();
  return out;
}

KrausSet kraus_triple(const CavityModel& model) {
  const EtaTheta et = eta_theta(model);
  const double lt = model.lambda_t();
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix a3 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = std::cos(lt * et.eta);
  a1(1, 1) = std::cos(lt * et.theta);
  a2(1, 0) = std::sin(lt * et.eta);
  a3(0, 1) = std::sin(lt * et.theta);
  return KrausSet{{a1, a2, a3}};
}

CoinState apply_cavity(const CoinState& coin, const CavityModel& model) {
  const KrausSet kraus = kraus_triple(model);
  const Matrix2c out = kraus.apply(coin.matrix());
  return CoinState::from_computed(out);
}

double pair_coupling(const CavityModel& model, int n) {
  switch (model.variant) {
    case CavityVariant::JCM:
      return std::sqrt(n + 1.0);
    case CavityVariant::ID_JCM:
      // sigma^- a^dagger sqrt(N + 1) |+, n> = (n + 1) |-, n + 1>
      return n + 1.0;
    case CavityVariant::TWO_PHOTON:
    case CavityVariant::M_PHOTON:
      return std::sqrt(rising_ratio(n, model.multiplicity()));
  }
  return 0.0;
}

ComplexMatrix jc_unitary(const CavityModel& model, int fock_dim) {
  model.validate();
  const int m = model.multiplicity();
  if (fock_dim < model.r + m + 1) {
    throw ParameterError("jc_unitary: fock_dim must be >= r + m + 1");
  }
  const int d = fock_dim;
  const double lt = model.lambda_t();
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix u = ComplexMatrix::Identity(2 * d, 2 * d);
  for (int n = 0; n + m < d; ++n) {
    const int plus = n;            // |+, n>
    const int minus = d + n + m;   // |-, n + m>
    const double angle = lt * pair_coupling(model, n);
    u(plus, plus) = std::cos(angle);
    u(minus, minus) = std::cos(angle);
    u(plus, minus) = minus_i * std::sin(angle);
    u(minus, plus) = minus_i * std::sin(angle);
  }
  return u;
}

CoinState channel_via_unitary(const CoinState& coin, const CavityModel& model) {
  model.validate();
  const int d = model.r + model.multiplicity() + 2;
  const ComplexMatrix u = jc_unitary(model, d);
  ComplexMatrix field = ComplexMatrix::Zero(d, d);
  field(model.r, model.r) = 1.0;
  const ComplexMatrix joint = u * kron(coin.matrix(), field) * u.adjoint();
  Matrix2c reduced = Matrix2c::Zero();
  for (int c = 0; c < 2; ++c) {
    for (int e = 0; e < 2; ++e) {
      reduced(c, e) = joint.block(c * d, e * d, d, d).trace();
    }
  }
  return CoinState::from_computed(reduced);
}

}  // namespace qwalk
