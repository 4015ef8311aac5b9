#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwalk/error.hpp"

namespace qwalk::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::add_meta(const std::string& key, double value) {
  meta.emplace_back(key, format_number(value));
}

void Table::add_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [key, value] : table.meta) os << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

namespace {

nlohmann::ordered_json number_or_string(const std::string& text) {
  if (text == "nan" || text == "inf" || text == "-inf") return text;
  const bool integral = !text.empty() && text.find_first_not_of("-0123456789") == std::string::npos;
  if (integral) {
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() + text.size()) return v;
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (!text.empty() && end == text.c_str() + text.size()) return v;
  return text;
}

}  // namespace

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = number_or_string(value);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      r[table.columns[i]] = number_or_string(format_number(row[i]));
    }
    rows.push_back(std::move(r));
  }
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

void emit(const Table& table, const std::string& format, const std::string& path,
          std::ostream& fallback) {
  if (format != "csv" && format != "json") {
    throw ParameterError("unknown output format '" + format + "' (expected csv|json)");
  }
  std::ostringstream body;
  if (format == "csv") {
    write_csv(table, body);
  } else {
    write_json(table, body);
  }
  if (path.empty()) {
    fallback << body.str();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write output file '" + tmp.string() + "'");
    out << body.str();
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw ParameterError("failed writing output file '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ParameterError("cannot move output into place at '" + path + "'");
  }
}

}  // namespace qwalk::cli
