#include "cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/qcore.hpp"

namespace qwalk::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Parses a leading floating-point literal; returns characters consumed (0 if none).
std::size_t parse_number(std::string_view s, double& value) {
  std::string buf(s);
  const char* begin = buf.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  return static_cast<std::size_t>(end - begin);
}

double parse_real(std::string_view text, const char* what) {
  const std::string s = trim(text);
  double v = 0.0;
  if (s.empty() || parse_number(s, v) != s.size() || !std::isfinite(v)) {
    throw ParameterError(std::string("invalid ") + what + ": '" + s + "'");
  }
  return v;
}

int parse_int(std::string_view text, const char* what) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError(std::string("invalid ") + what + ": '" + s + "'");
  }
  return v;
}

double angle_from_json(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ParameterError(std::string(what) + " must be a number or an angle expression");
}

CavityModel cavity_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_cavity_spec(j.get<std::string>());
  if (!j.is_object()) throw ParameterError("cavity must be an object or a spec string");
  CavityModel model;
  model.variant = parse_variant(j.value("model", std::string("jcm")));
  model.r = j.value("r", 0);
  model.lambda = j.contains("lambda") ? angle_from_json(j["lambda"], "lambda") : 1.0;
  model.t = j.contains("t") ? angle_from_json(j["t"], "t") : 0.0;
  model.omega = j.contains("omega") ? angle_from_json(j["omega"], "omega") : 0.0;
  model.m = j.contains("m") ? j["m"].get<int>() : 0;
  if (model.m == 0) model.m = model.variant == CavityVariant::TWO_PHOTON ? 2 : 1;
  model.validate();
  return model;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParameterError("empty angle");
  const std::string original = s;
  double sign = 1.0;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }
  double coefficient = 1.0;
  bool have_number = false;
  bool have_pi = false;
  if (pos < s.size() && s.compare(pos, 2, "pi") != 0) {
    const std::size_t used = parse_number(std::string_view(s).substr(pos), coefficient);
    if (used == 0) throw ParameterError("invalid angle: '" + original + "'");
    pos += used;
    have_number = true;
  }
  if (pos < s.size() && s[pos] == '*') {
    ++pos;
    if (s.compare(pos, 2, "pi") != 0) throw ParameterError("invalid angle: '" + original + "'");
  }
  if (s.compare(pos, 2, "pi") == 0) {
    have_pi = true;
    pos += 2;
  }
  double divisor = 1.0;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    divisor = parse_real(std::string_view(s).substr(pos), "angle divisor");
    if (divisor == 0.0) throw ParameterError("angle divisor must be nonzero");
    pos = s.size();
  }
  if (pos != s.size() || (!have_number && !have_pi)) {
    throw ParameterError("invalid angle: '" + original + "'");
  }
  const double value = sign * coefficient * (have_pi ? kPi : 1.0) / divisor;
  if (!std::isfinite(value)) throw ParameterError("angle is not finite: '" + original + "'");
  return value;
}

CavityModel parse_cavity_spec(std::string_view text) {
  CavityModel model;
  bool have_model = false;
  bool have_m = false;
  std::string spec(text);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("cavity spec entry '" + item + "' lacks '='");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    if (key == "model") {
      model.variant = parse_variant(value);
      have_model = true;
    } else if (key == "r") {
      model.r = parse_int(value, "r");
    } else if (key == "m") {
      model.m = parse_int(value, "m");
      have_m = true;
    } else if (key == "lambda") {
      model.lambda = parse_angle(value);
    } else if (key == "t") {
      model.t = parse_angle(value);
    } else if (key == "omega") {
      model.omega = parse_angle(value);
    } else {
      throw ParameterError("unknown cavity spec key '" + key + "'");
    }
  }
  if (!have_model) throw ParameterError("cavity spec needs model=jcm|id|2ph|mph");
  if (!have_m) model.m = model.variant == CavityVariant::TWO_PHOTON ? 2 : 1;
  model.validate();
  return model;
}

std::string format_cavity_spec(const CavityModel& model) {
  std::ostringstream os;
  os.precision(17);
  os << "model=" << variant_name(model.variant) << ",r=" << model.r << ",m=" << model.m
     << ",lambda=" << model.lambda << ",t=" << model.t << ",omega=" << model.omega;
  return os.str();
}

nlohmann::ordered_json to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["steps"] = config.steps;
  j["k"] = config.k;
  j["chi"] = config.chi;
  if (config.cavity) {
    const CavityModel& c = *config.cavity;
    j["cavity"] = {{"model", std::string(variant_name(c.variant))},
                   {"r", c.r},
                   {"m", c.m},
                   {"lambda", c.lambda},
                   {"t", c.t},
                   {"omega", c.omega}};
  } else {
    j["cavity"] = nullptr;
  }
  j["samples"] = config.samples;
  j["count"] = config.count;
  j["steps_list"] = config.steps_list;
  j["format"] = config.format;
  j["out"] = config.out;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "steps") {
        base.steps = value.get<int>();
      } else if (key == "k") {
        base.k = value.get<int>();
      } else if (key == "chi") {
        base.chi = angle_from_json(value, "chi");
      } else if (key == "cavity") {
        if (value.is_null()) {
          base.cavity.reset();
        } else {
          base.cavity = cavity_from_json(value);
        }
      } else if (key == "samples") {
        base.samples = value.get<int>();
      } else if (key == "count") {
        base.count = value.get<int>();
      } else if (key == "steps_list") {
        base.steps_list = value.get<std::vector<int>>();
      } else if (key == "format") {
        base.format = value.get<std::string>();
      } else if (key == "out") {
        base.out = value.get<std::string>();
      } else {
        throw ParameterError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed config: ") + e.what());
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

}  // namespace qwalk::cli
