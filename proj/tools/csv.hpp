#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lsnsum::cli {

/// 17 significant digits, so values round-trip exactly. Locale independent.
std::string format_double(double v);

/// Shortest text that round-trips, for human-facing tables.
std::string format_short(double v);

/// Header plus rows; a missing cell is written as an empty field.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::optional<double>>& cells);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lsnsum::cli
