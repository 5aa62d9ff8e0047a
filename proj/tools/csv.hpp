#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convgraph::cli {

/// Fixed-point, six decimals. Negative zero prints as zero.
std::string format_real(double v);
std::string format_real(const std::optional<double>& v);  // empty field when absent

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

/// Line-oriented CSV output file. Throws IoError when the file cannot be
/// opened or written.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace convgraph::cli
