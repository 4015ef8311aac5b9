#include "cli/app.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "qwalk/error.hpp"

namespace qwalk::cli {

namespace {

// Raw flag text; parsed after the config file has been merged in.
struct Flags {
  std::string config_path;
  int steps = 0;
  int k = 2;
  std::string chi;
  std::string cavity;
  int samples = 0;
  int count = 0;
  std::vector<int> steps_list;
  std::string format;
  std::string out;
  // cavity / resonance subcommands
  std::string model;
  int r = 0;
  int m = 0;
  std::string lambda;
  std::string t;
  std::string omega;
};

using Command = std::function<Table(const RunConfig&)>;

struct Subcommand {
  CLI::App* app = nullptr;
  Command command;
};

bool given(CLI::App* app, const std::string& name) {
  try {
    return app->count(name) > 0;
  } catch (const CLI::OptionNotFound&) {
    return false;
  }
}

RunConfig resolve(CLI::App* app, const Flags& flags) {
  RunConfig config;
  if (given(app, "--config")) config = load_config_file(flags.config_path, config);
  if (given(app, "--steps")) config.steps = flags.steps;
  if (given(app, "--k")) config.k = flags.k;
  if (given(app, "--chi")) config.chi = parse_angle(flags.chi);
  if (given(app, "--cavity")) config.cavity = parse_cavity_spec(flags.cavity);
  if (given(app, "--samples")) config.samples = flags.samples;
  if (given(app, "--count")) config.count = flags.count;
  if (given(app, "--steps-list")) config.steps_list = flags.steps_list;
  if (given(app, "--format")) config.format = flags.format;
  if (given(app, "--out")) config.out = flags.out;

  const bool cavity_flags = given(app, "--model") || given(app, "--r") || given(app, "--m") ||
                            given(app, "--lambda") || given(app, "--t") || given(app, "--omega");
  if (cavity_flags) {
    CavityModel model = config.cavity.value_or(CavityModel{});
    if (given(app, "--model")) {
      model.variant = parse_variant(flags.model);
      if (!given(app, "--m")) model.m = model.variant == CavityVariant::TWO_PHOTON ? 2 : 1;
    }
    if (given(app, "--r")) model.r = flags.r;
    if (given(app, "--m")) model.m = flags.m;
    if (given(app, "--lambda")) model.lambda = parse_angle(flags.lambda);
    if (given(app, "--t")) model.t = parse_angle(flags.t);
    if (given(app, "--omega")) model.omega = parse_angle(flags.omega);
    model.validate();
    config.cavity = model;
  }
  return config;
}

void add_common(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config_path, "JSON file overriding the defaults");
  sub->add_option("--format", flags.format, "csv (default) or json");
  sub->add_option("--out", flags.out, "Output path; stdout when omitted");
}

void add_walk_coin(CLI::App* sub, Flags& flags) {
  sub->add_option("--chi", flags.chi, "Coin angle in radians (e.g. 0, pi/8)");
  sub->add_option("--cavity", flags.cavity,
                  "model=jcm|id|2ph|mph,r=INT[,m=INT],lambda=REAL,t=REAL");
}

void add_cavity_model(CLI::App* sub, Flags& flags, bool with_time) {
  sub->add_option("--cavity", flags.cavity, "Full spec; the single-field flags below override it");
  sub->add_option("--model", flags.model, "jcm, id, 2ph or mph");
  sub->add_option("--r", flags.r, "Initial Fock level of the field");
  sub->add_option("--m", flags.m, "Photon multiplicity (mph model)");
  sub->add_option("--lambda", flags.lambda, "Coupling constant (default 1)");
  if (with_time) sub->add_option("--t", flags.t, "Interaction time");
  sub->add_option("--omega", flags.omega, "Field frequency (recorded only)");
  sub->add_option("--chi", flags.chi, "Coin angle in radians");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity-driven V^k quantum walk on the line"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<Subcommand> subs;

  {
    CLI::App* sub = app.add_subcommand("walk", "Position distribution after n steps");
    sub->add_option("--steps", flags.steps, "Number of walk steps");
    sub->add_option("--k", flags.k, "Applications of V per step");
    add_walk_coin(sub, flags);
    add_common(sub, flags);
    subs.push_back({sub, cmd_walk});
  }
  {
    CLI::App* sub = app.add_subcommand("limit", "Limit density of m/n for the V^2 walk");
    add_walk_coin(sub, flags);
    sub->add_option("--samples", flags.samples, "Interior points of the support");
    add_common(sub, flags);
    subs.push_back({sub, cmd_limit});
  }
  {
    CLI::App* sub = app.add_subcommand("cavity", "Coin state after the cavity");
    add_cavity_model(sub, flags, true);
    add_common(sub, flags);
    subs.push_back({sub, cmd_cavity});
  }
  {
    CLI::App* sub = app.add_subcommand("resonance", "Interaction times that erase the coin");
    add_cavity_model(sub, flags, false);
    sub->add_option("--count", flags.count, "Number of times to list");
    add_common(sub, flags);
    subs.push_back({sub, cmd_resonance});
  }
  {
    CLI::App* sub = app.add_subcommand("converge", "Finite-n distance to the limit law");
    sub->add_option("--steps-list", flags.steps_list, "Comma-separated n values")->delimiter(',');
    sub->add_option("--k", flags.k, "Applications of V per step (must be 2)");
    add_walk_coin(sub, flags);
    add_common(sub, flags);
    subs.push_back({sub, cmd_converge});
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  }

  try {
    for (const Subcommand& sub : subs) {
      if (!sub.app->parsed()) continue;
      const RunConfig config = resolve(sub.app, flags);
      const Table table = sub.command(config);
      emit(table, config.format, config.out, out);
      return kExitOk;
    }
    err << "error: no subcommand\n";
    return kExitParameterError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantViolation;
  }
}

}  // namespace qwalk::cli
