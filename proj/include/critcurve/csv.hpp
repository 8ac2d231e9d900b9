#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critcurve {

/// First line of every emitted file, without the comment marker.
std::string banner(std::string_view config_hash);

/// Shortest round-trip-safe rendering, identical on every run.
std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  /// "# <banner>" line, header line, then the rows.
  std::string render(std::string_view banner_text) const;
  void write(const std::filesystem::path& path, std::string_view banner_text) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes text to path, failing loudly when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace critcurve
