#ifndef QWALK_CLI_CONFIG_HPP
#define QWALK_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qwalk/cavity.hpp"

namespace qwalk::cli {

// Parameters of one CLI invocation. Values come from built-in defaults, then
// an optional JSON config file, then explicit flags.
struct RunConfig {
  int steps = 0;
  int k = 2;
  double chi = 0.0;
  std::optional<CavityModel> cavity;
  int samples = 201;
  int count = 3;
  std::vector<int> steps_list;
  std::string format = "csv";
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

// Radians. Accepts plain numbers and multiples of pi such as "pi", "-pi/2",
// "3pi/4", "3*pi/4", "0.5*pi". Throws ParameterError otherwise.
double parse_angle(std::string_view text);

// model=jcm|id|2ph|mph,r=INT[,m=INT],lambda=REAL,t=REAL[,omega=REAL]
CavityModel parse_cavity_spec(std::string_view text);
std::string format_cavity_spec(const CavityModel& model);

nlohmann::ordered_json to_json(const RunConfig& config);
// Fields absent from `j` keep their value from `base`. Angles may be given as
// numbers or as strings understood by parse_angle.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace qwalk::cli

#endif  // QWALK_CLI_CONFIG_HPP
