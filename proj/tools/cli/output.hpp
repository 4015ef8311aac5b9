#ifndef QWALK_CLI_OUTPUT_HPP
#define QWALK_CLI_OUTPUT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qwalk::cli {

// Numbers are formatted once, at 12 significant digits, and the same text
// feeds both the CSV and the JSON writer.
std::string format_number(double v);

struct Table {
  // Ordered metadata; values are either formatted numbers or plain words.
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, double value);
  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, const char* value) { add_meta(key, std::string(value)); }
};

// `# key=value` header lines, a column header, then comma-separated rows.
void write_csv(const Table& table, std::ostream& os);
// {"meta": {...}, "rows": [{column: value, ...}, ...]}
void write_json(const Table& table, std::ostream& os);

// Renders in `format` (csv|json) to `path` via a temporary file and rename,
// or to `fallback` when path is empty.
void emit(const Table& table, const std::string& format, const std::string& path,
          std::ostream& fallback);

}  // namespace qwalk::cli

#endif  // QWALK_CLI_OUTPUT_HPP
