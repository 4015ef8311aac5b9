#ifndef QWALK_CAVITY_HPP
#define QWALK_CAVITY_HPP

// Resonant Jaynes-Cummings cavity acting on the coin before it enters the walk.
//
// The field starts in the Fock state |r>. Tracing the field out leaves the coin
// channel with Kraus operators
//
//   A1 = diag(cos(lt eta), cos(lt theta)),  A2 = sin(lt eta) |-><+|,
//   A3 = sin(lt theta) |+><-|,
//
// where lt = lambda * t and (eta, theta) depend on the model and r. The same
// channel is also available by building the interaction-picture unitary on
// coin (x) Fock space and tracing out the field, which serves as a check.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/qcore.hpp"

namespace qwalk {

enum class CavityVariant { JCM, ID_JCM, TWO_PHOTON, M_PHOTON };

std::string_view variant_name(CavityVariant v);
// Accepts jcm, id, id-jcm, 2ph, mph (case-insensitive).
CavityVariant parse_variant(std::string_view name);

struct CavityModel {
  CavityVariant variant = CavityVariant::JCM;
  int m = 1;  // photons exchanged per transition
  int r = 0;  // initial Fock level of the field
  double lambda = 1.0;
  double t = 0.0;
  // Field/atom frequency. On resonance it drops out of the interaction
  // picture; kept so configurations record the full Hamiltonian.
  double omega = 0.0;

  bool operator==(const CavityModel&) const = default;

  double lambda_t() const { return lambda * t; }

  // Effective photon multiplicity: 1 for JCM/ID_JCM, 2 for TWO_PHOTON.
  int multiplicity() const;

  // Throws ParameterError for m < 1, r < 0, lambda <= 0, t < 0, non-finite values,
  // or an m inconsistent with the variant.
  void validate() const;
};

CavityModel make_cavity(CavityVariant variant, int r, double lambda, double t, int m = 0);

struct EtaTheta {
  double eta = 0.0;
  double theta = 0.0;
};

EtaTheta eta_theta(const CavityModel& model);

struct KrausSet {
  std::vector<ComplexMatrix> operators;

  // max |sum_i A_i^dagger A_i - 1|
  double completeness_defect() const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

KrausSet kraus_triple(const CavityModel& model);

CoinState apply_cavity(const CoinState& coin, const CavityModel& model);

// Coupling g(n) of the pair {|+, n>, |-, n + m>} in units of lambda.
double pair_coupling(const CavityModel& model, int n);

// exp(-i t V) on coin (x) span{|0>..|fock_dim-1>}, index c * fock_dim + n.
// Built block by block on the invariant subspaces; |-, n> with n < m is dark,
// and |+, n> whose partner lies above the truncation is left untouched.
ComplexMatrix jc_unitary(const CavityModel& model, int fock_dim);

CoinState channel_via_unitary(const CoinState& coin, const CavityModel& model);

}  // namespace qwalk

#endif  // QWALK_CAVITY_HPP
