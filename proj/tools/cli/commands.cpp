#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/asympt.hpp"
#include "qwalk/cavity.hpp"
#include "qwalk/error.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::cli {

namespace {

constexpr double kColumnSumTol = 1e-9;

struct DrivenCoin {
  CoinState coin;
  DrivenAmplitudes amplitudes;
  EtaTheta et;
};

DrivenCoin driven_coin(const RunConfig& config) {
  const CoinState input = coin_state_from_angle(config.chi);
  if (!config.cavity) {
    return {input, driven_amplitudes(config.chi, 0.0, 1.0, 0.0), EtaTheta{}};
  }
  const CavityModel& model = *config.cavity;
  return {apply_cavity(input, model), driven_amplitudes(config.chi, model), eta_theta(model)};
}

void add_cavity_meta(Table& table, const RunConfig& config, const DrivenCoin& driven) {
  table.add_meta("chi", config.chi);
  if (config.cavity) {
    const CavityModel& model = *config.cavity;
    table.add_meta("model", std::string(variant_name(model.variant)));
    table.add_meta("r", model.r);
    table.add_meta("m", model.m);
    table.add_meta("lambda", model.lambda);
    table.add_meta("t", model.t);
    table.add_meta("omega", model.omega);
    table.add_meta("eta", driven.et.eta);
    table.add_meta("theta", driven.et.theta);
  } else {
    table.add_meta("model", "none");
  }
  table.add_meta("A", driven.amplitudes.A_t);
  table.add_meta("B", driven.amplitudes.B_t);
  table.add_meta("C", driven.amplitudes.C_t);
  table.add_meta("C2", driven.amplitudes.C_t * driven.amplitudes.C_t);
  table.add_meta("Lambda", driven.amplitudes.Lambda_t);
}

void require_steps(int steps) {
  if (steps < 0) throw ParameterError("--steps must be >= 0");
}

void check_column_sum(double sum, int n) {
  if (std::abs(sum - 1.0) > kColumnSumTol) {
    std::ostringstream msg;
    msg << "probabilities at n=" << n << " sum to " << sum;
    throw InvariantViolation(msg.str());
  }
}

}  // namespace

Table cmd_walk(const RunConfig& config) {
  require_steps(config.steps);
  if (config.k < 1) throw ParameterError("--k must be >= 1");
  const DrivenCoin driven = driven_coin(config);

  WalkConfig walk;
  walk.k = config.k;
  walk.n_steps = config.steps;
  walk.coin = driven.coin;
  const PositionDistribution dist = position_distribution(evolve(walk));

  Table table;
  table.add_meta("command", "walk");
  table.add_meta("k", config.k);
  table.add_meta("steps", config.steps);
  add_cavity_meta(table, config, driven);
  table.columns = {"n", "m", "y", "p"};

  const int n = config.steps;
  const int reach = config.k * n;
  double sum = 0.0;
  for (int m = -reach; m <= reach; m += 2) {
    const double p = dist.probability(m);
    sum += p;
    const double y = n > 0 ? static_cast<double>(m) / n : 0.0;
    table.rows.push_back({static_cast<double>(n), static_cast<double>(m), y, p});
  }
  check_column_sum(sum, n);
  return table;
}

Table cmd_limit(const RunConfig& config) {
  if (config.samples < 1) throw ParameterError("--samples must be >= 1");
  const DrivenCoin driven = driven_coin(config);
  const double amplitude = driven.amplitudes.C_t;

  Table table;
  table.add_meta("command", "limit");
  add_cavity_meta(table, config, driven);

  if (amplitude < kResonanceThreshold) {
    // Maximally mixed coin: jumps of 0, +-2 with probabilities 1/2, 1/4, 1/4.
    table.add_meta("branch", "classical");
    table.add_meta("scaling", "L/sqrt(n)");
    table.add_meta("mean_per_step", 0.0);
    table.add_meta("variance_per_step", 2.0);
    table.columns = {"y", "density"};
    return table;
  }

  const LimitLaw law(amplitude);
  table.add_meta("branch", "arcsine");
  table.add_meta("scaling", "L/n");
  table.add_meta("support_lower", law.lower());
  table.add_meta("support_upper", law.upper());
  table.add_meta("normalization", law.normalization());
  table.add_meta("second_moment", law.moment(2));
  table.columns = {"y", "density"};
  const int s = config.samples;
  for (int i = 1; i <= s; ++i) {
    const double y = law.lower() + 2.0 * amplitude * static_cast<double>(i) / (s + 1);
    table.rows.push_back({y, law.pdf(y)});
  }
  return table;
}

Table cmd_cavity(const RunConfig& config) {
  if (!config.cavity) throw ParameterError("cavity command needs a cavity model");
  const CavityModel& model = *config.cavity;
  const CoinState input = coin_state_from_angle(config.chi);
  const CoinState output = apply_cavity(input, model);
  const EtaTheta et = eta_theta(model);
  const BlochVector b = output.bloch();

  Table table;
  table.add_meta("command", "cavity");
  table.add_meta("model", std::string(variant_name(model.variant)));
  table.add_meta("r", model.r);
  table.add_meta("m", model.m);
  table.add_meta("lambda", model.lambda);
  table.add_meta("t", model.t);
  table.add_meta("lambda_t", model.lambda_t());
  table.add_meta("omega", model.omega);
  table.add_meta("chi", config.chi);
  table.add_meta("eta", et.eta);
  table.add_meta("theta", et.theta);
  table.add_meta("kraus_completeness_defect", kraus_triple(model).completeness_defect());
  table.add_meta("r1", b.r1);
  table.add_meta("r2", b.r2);
  table.add_meta("r3", b.r3);
  table.add_meta("bloch_norm", b.norm());
  table.columns = {"row", "col", "re", "im"};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex v = output.matrix()(i, j);
      table.rows.push_back({static_cast<double>(i), static_cast<double>(j), v.real(), v.imag()});
    }
  }
  return table;
}

Table cmd_resonance(const RunConfig& config) {
  if (!config.cavity) throw ParameterError("resonance command needs a cavity model");
  const CavityModel& model = *config.cavity;
  const std::vector<double> times = resonance_times(model, config.chi, config.count);
  const EtaTheta et = eta_theta(model);

  Table table;
  table.add_meta("command", "resonance");
  table.add_meta("model", std::string(variant_name(model.variant)));
  table.add_meta("r", model.r);
  table.add_meta("m", model.m);
  table.add_meta("lambda", model.lambda);
  table.add_meta("chi", config.chi);
  table.add_meta("eta", et.eta);
  table.add_meta("theta", et.theta);
  table.columns = {"j", "t", "lambda_t", "C"};
  for (std::size_t j = 0; j < times.size(); ++j) {
    CavityModel at = model;
    at.t = times[j];
    const DrivenAmplitudes amp = driven_amplitudes(config.chi, at);
    // resonance_times checks C at the snapped angle; the coin actually fed in
    // must come out maximally mixed as well.
    const double norm = apply_cavity(coin_state_from_angle(config.chi), at).bloch().norm();
    if (!(amp.C_t < kResonanceThreshold) || !(norm < kResonanceThreshold)) {
      std::ostringstream msg;
      msg << "t=" << times[j] << " is not resonant (C=" << amp.C_t << ", |bloch|=" << norm << ")";
      throw InvariantViolation(msg.str());
    }
    table.rows.push_back(
        {static_cast<double>(j), times[j], model.lambda * times[j], amp.C_t});
  }
  return table;
}

Table cmd_converge(const RunConfig& config) {
  if (config.steps_list.empty()) throw ParameterError("--steps-list must name at least one n");
  if (config.k != 2) throw ParameterError("converge compares against the V^2 limit law; use --k 2");
  std::vector<int> ns = config.steps_list;
  for (int n : ns) {
    if (n < 1) throw ParameterError("--steps-list entries must be >= 1");
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const DrivenCoin driven = driven_coin(config);
  const LimitLaw law = LimitLaw::for_coin(driven.coin);
  const bool classical = law.is_degenerate();

  Table table;
  table.add_meta("command", "converge");
  table.add_meta("k", config.k);
  add_cavity_meta(table, config, driven);
  table.add_meta("branch", classical ? "classical" : "arcsine");
  table.add_meta("scaling", classical ? "L/sqrt(n)" : "L/n");
  if (classical) {
    table.columns = {"n", "variance", "var_over_n"};
  } else {
    table.add_meta("limit_m2", law.moment(2));
    table.columns = {"n", "ks", "m2", "limit_m2", "abs_err"};
  }

  WalkConfig walk;
  walk.k = config.k;
  walk.n_steps = ns.back();
  walk.coin = driven.coin;
  std::size_t next = 0;
  evolve(walk, [&](int step, const WalkerState& state) {
    if (next >= ns.size() || step != ns[next]) return;
    ++next;
    const PositionDistribution dist = position_distribution(state);
    check_column_sum(dist.total(), step);
    const double n = step;
    if (classical) {
      const double var = position_variance(dist);
      table.rows.push_back({n, var, var / n});
    } else {
      const double m2 = scaled_moment(dist, 2, step, 1.0);
      const double limit = law.moment(2);
      table.rows.push_back({n, ks_distance(dist, step, law), m2, limit, std::abs(m2 - limit)});
    }
  });
  return table;
}

}  // namespace qwalk::cli
