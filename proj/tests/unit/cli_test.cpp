#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "qwalk/error.hpp"

namespace qwalk::cli {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  double at(std::size_t row, const std::string& column) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == column) return rows.at(row).at(c);
    throw std::out_of_range(column);
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
    } else if (csv.columns.empty()) {
      csv.columns = split(line, ',');
    } else if (!line.empty()) {
      std::vector<double> row;
      for (const auto& cell : split(line, ',')) row.push_back(std::stod(cell));
      csv.rows.push_back(row);
    }
  }
  return csv;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qwalk_cli_test_" + name);
}

TEST(CliWalk, OneStepRows) {
  const Result r = invoke({"walk", "--steps", "1", "--k", "2", "--chi", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.rows.size(), 3u);
  EXPECT_EQ(csv.at(0, "m"), -2);
  EXPECT_NEAR(csv.at(0, "p"), 0.25, 1e-12);
  EXPECT_EQ(csv.at(1, "m"), 0);
  EXPECT_NEAR(csv.at(1, "p"), 0.5, 1e-12);
  EXPECT_EQ(csv.at(2, "m"), 2);
  EXPECT_NEAR(csv.at(2, "p"), 0.25, 1e-12);
  EXPECT_EQ(csv.meta.at("C"), "1");
}

TEST(CliWalk, ZeroSteps) {
  const Csv csv = parse_csv(invoke({"walk", "--steps", "0"}).out);
  ASSERT_EQ(csv.rows.size(), 1u);
  EXPECT_EQ(csv.at(0, "m"), 0);
  EXPECT_EQ(csv.at(0, "p"), 1.0);
}

TEST(CliWalk, ColumnSumsToOne) {
  const Csv csv = parse_csv(invoke({"walk", "--steps", "36", "--chi", "pi/8"}).out);
  double total = 0.0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) total += csv.at(i, "p");
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_EQ(csv.rows.size(), 73u);
  EXPECT_NEAR(csv.at(36, "y"), 0.0, 0.0);
}

TEST(CliWalk, CsvAndJsonCarryIdenticalNumbers) {
  const std::vector<std::string> base = {"walk", "--steps", "7", "--chi", "0.3",
                                         "--cavity", "model=jcm,r=1,lambda=1,t=0.2"};
  const Csv csv = parse_csv(invoke(base).out);
  std::vector<std::string> json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto j = nlohmann::json::parse(invoke(json_args).out);
  ASSERT_EQ(j["rows"].size(), csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i)
    for (const auto& col : csv.columns) EXPECT_EQ(j["rows"][i][col].get<double>(), csv.at(i, col));
  for (const auto& [key, value] : csv.meta) {
    const auto& v = j["meta"][key];
    if (v.is_string()) {
      EXPECT_EQ(v.get<std::string>(), value);
    } else {
      EXPECT_EQ(v.get<double>(), std::stod(value)) << key;
    }
  }
}

TEST(CliWalk, Deterministic) {
  const std::vector<std::string> args = {"walk", "--steps", "15", "--chi", "pi/8", "--cavity",
                                         "model=id,r=2,lambda=1,t=0.3"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliWalk, Errors) {
  EXPECT_EQ(invoke({"walk", "--steps", "-1"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--k", "0", "--steps", "1"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--bogus"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--chi", "banana"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--format", "xml"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--cavity", "model=jcm,r=-1"}).code, kExitParameterError);
  EXPECT_EQ(invoke({}).code, kExitParameterError);
  EXPECT_EQ(invoke({"walk", "--help"}).code, kExitOk);
}

TEST(CliOutput, WriteThenRename) {
  const auto path = temp_path("walk.csv");
  std::filesystem::remove(path);
  const Result r = invoke({"walk", "--steps", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), invoke({"walk", "--steps", "2"}).out);
  std::filesystem::remove(path);
}

TEST(CliOutput, FormatNumber) {
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
}

TEST(CliConfig, ParseAngle) {
  EXPECT_DOUBLE_EQ(parse_angle("0"), 0.0);
  EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/2"), -kPi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/4"), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("0.5*pi"), kPi / 2);
  EXPECT_THROW(parse_angle(""), ParameterError);
  EXPECT_THROW(parse_angle("pi/0"), ParameterError);
  EXPECT_THROW(parse_angle("2pie"), ParameterError);
}

TEST(CliConfig, CavitySpec) {
  const CavityModel m = parse_cavity_spec("model=2ph,r=3,lambda=2,t=pi/8");
  EXPECT_EQ(m.variant, CavityVariant::TWO_PHOTON);
  EXPECT_EQ(m.m, 2);
  EXPECT_EQ(m.r, 3);
  EXPECT_EQ(m.lambda, 2.0);
  EXPECT_DOUBLE_EQ(m.t, kPi / 8);
  EXPECT_EQ(parse_cavity_spec(format_cavity_spec(m)), m);
  EXPECT_EQ(parse_cavity_spec("model=mph,m=3,r=1").m, 3);
  EXPECT_THROW(parse_cavity_spec("r=3"), ParameterError);
  EXPECT_THROW(parse_cavity_spec("model=jcm,q=1"), ParameterError);
  EXPECT_THROW(parse_cavity_spec("model=jcm,m=2"), ParameterError);
}

TEST(CliConfig, JsonRoundTrip) {
  RunConfig c;
  c.steps = 12;
  c.k = 3;
  c.chi = 0.7;
  c.cavity = make_cavity(CavityVariant::M_PHOTON, 4, 1.5, 0.25, 3);
  c.steps_list = {5, 10};
  c.format = "json";
  EXPECT_EQ(config_from_json(nlohmann::json::parse(to_json(c).dump())), c);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"stepz": 3})")), ParameterError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"steps": "x"})")), ParameterError);
  EXPECT_DOUBLE_EQ(config_from_json(nlohmann::json::parse(R"({"chi": "pi/8"})")).chi, kPi / 8);
}

TEST(CliConfig, FlagsOverrideConfigFile) {
  const auto path = temp_path("config.json");
  {
    std::ofstream out(path);
    out << R"({"steps": 3, "chi": "pi/4", "cavity": "model=jcm,r=0,lambda=1,t=0.1"})";
  }
  const Csv from_file = parse_csv(invoke({"walk", "--config", path.string()}).out);
  EXPECT_EQ(from_file.meta.at("steps"), "3");
  EXPECT_EQ(from_file.meta.at("model"), "jcm");
  EXPECT_EQ(from_file.meta.at("chi"), format_number(kPi / 4));
  const Csv overridden = parse_csv(invoke({"walk", "--config", path.string(), "--steps", "5"}).out);
  EXPECT_EQ(overridden.meta.at("steps"), "5");
  EXPECT_EQ(overridden.meta.at("chi"), format_number(kPi / 4));
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"walk", "--config", path.string()}).code, kExitParameterError);
}

TEST(CliLimit, Undriven) {
  const Csv csv = parse_csv(invoke({"limit", "--samples", "3"}).out);
  EXPECT_EQ(csv.meta.at("C"), "1");
  EXPECT_EQ(csv.meta.at("branch"), "arcsine");
  ASSERT_EQ(csv.rows.size(), 3u);
  EXPECT_EQ(csv.at(1, "y"), 0.0);
  EXPECT_NEAR(csv.at(1, "density"), 1.0 / kPi, 1e-11);
}

TEST(CliLimit, TunedAmplitude) {
  // JCM vacuum, chi = 0: C = cos(2 lt), so lt = acos(sqrt 0.7) / 2 gives C^2 = 0.7.
  const double t = std::acos(std::sqrt(0.7)) / 2;
  std::ostringstream spec;
  spec.precision(17);
  spec << "model=jcm,r=0,lambda=1,t=" << t;
  const Csv csv = parse_csv(invoke({"limit", "--cavity", spec.str()}).out);
  EXPECT_NEAR(std::stod(csv.meta.at("C2")), 0.7, 1e-9);
  EXPECT_NEAR(std::stod(csv.meta.at("normalization")), 1.0, 1e-9);
  EXPECT_NEAR(std::stod(csv.meta.at("second_moment")), 0.35, 1e-9);
}

TEST(CliLimit, ClassicalMarkerAtResonance) {
  const Csv csv = parse_csv(invoke({"limit", "--cavity", "model=jcm,r=0,lambda=1,t=pi/4"}).out);
  EXPECT_EQ(csv.meta.at("branch"), "classical");
  EXPECT_EQ(csv.meta.at("variance_per_step"), "2");
  EXPECT_EQ(csv.meta.at("scaling"), "L/sqrt(n)");
  EXPECT_TRUE(csv.rows.empty());
}

TEST(CliCavity, Outputs) {
  Csv csv = parse_csv(invoke({"cavity", "--model", "jcm", "--r", "0", "--t", "pi/4"}).out);
  EXPECT_LT(std::stod(csv.meta.at("bloch_norm")), 1e-12);
  csv = parse_csv(invoke({"cavity", "--model", "id", "--r", "3", "--t", "0"}).out);
  EXPECT_EQ(csv.meta.at("eta"), "4");
  EXPECT_EQ(csv.meta.at("theta"), "3");
  EXPECT_EQ(csv.meta.at("r3"), "1");
  ASSERT_EQ(csv.rows.size(), 4u);
  EXPECT_EQ(csv.at(0, "re"), 1.0);
  csv = parse_csv(invoke({"cavity", "--cavity", "model=id,r=3,lambda=1,t=0", "--r", "4"}).out);
  EXPECT_EQ(csv.meta.at("eta"), "5");
}

TEST(CliResonance, Outputs) {
  Csv csv = parse_csv(invoke({"resonance", "--model", "jcm", "--r", "0", "--count", "2"}).out);
  ASSERT_EQ(csv.rows.size(), 2u);
  EXPECT_NEAR(csv.at(0, "t"), kPi / 4, 1e-11);
  EXPECT_NEAR(csv.at(1, "t"), 3 * kPi / 4, 1e-11);
  csv = parse_csv(
      invoke({"resonance", "--model", "mph", "--m", "2", "--r", "5", "--chi", "pi/2"}).out);
  ASSERT_EQ(csv.rows.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_NEAR(csv.at(j, "t"), (2 * j + 1) * kPi / (4 * std::sqrt(20.0)), 1e-11);
  EXPECT_EQ(invoke({"resonance", "--model", "jcm", "--r", "0", "--chi", "pi/2"}).code,
            kExitParameterError);
  EXPECT_EQ(invoke({"resonance", "--model", "jcm", "--chi", "0.3"}).code, kExitParameterError);
}

TEST(CliConverge, Undriven) {
  const Csv csv = parse_csv(invoke({"converge", "--steps-list", "25,50,100,200"}).out);
  ASSERT_EQ(csv.rows.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_LT(csv.at(i, "abs_err"), csv.at(i - 1, "abs_err"));
    EXPECT_LT(csv.at(i, "ks"), csv.at(i - 1, "ks"));
  }
  EXPECT_EQ(csv.at(0, "limit_m2"), 0.5);
}

TEST(CliConverge, ResonanceIsClassical) {
  const Csv csv = parse_csv(
      invoke({"converge", "--steps-list", "10,3", "--cavity", "model=jcm,r=0,lambda=1,t=pi/4"}).out);
  ASSERT_EQ(csv.rows.size(), 2u);
  EXPECT_EQ(csv.at(0, "n"), 3);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(csv.at(i, "var_over_n"), 2.0, 1e-9);
}

TEST(CliConverge, SingleRowAndErrors) {
  EXPECT_EQ(parse_csv(invoke({"converge", "--steps-list", "6"}).out).rows.size(), 1u);
  EXPECT_EQ(invoke({"converge", "--steps-list", "6", "--k", "3"}).code, kExitParameterError);
  EXPECT_EQ(invoke({"converge"}).code, kExitParameterError);
}

}  // namespace
}  // namespace qwalk::cli
