#include "critcurve/csv.hpp"

#include <fmt/format.h>
#include <fstream>

#include "critcurve/config.hpp"
#include "critcurve/error.hpp"

namespace critcurve {

std::string banner(std::string_view config_hash) {
  return fmt::format("critcurve {} config-hash={}", kVersion, config_hash);
}

std::string format_number(double x) { return fmt::format("{}", x); }

std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  require(!columns_.empty(), "a table needs at least one column");
}

void CsvTable::add(std::vector<std::string> cells) {
  require(cells.size() == columns_.size(),
          fmt::format("row has {} cells, table has {} columns", cells.size(), columns_.size()));
  for (const auto& c : cells)
    require(c.find_first_of(",\n\"") == std::string::npos, fmt::format("cell '{}' needs quoting", c));
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(std::string_view banner_text) const {
  std::string out = fmt::format("# {}\n{}\n", banner_text, fmt::join(columns_, ","));
  for (const auto& row : rows_) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

void CsvTable::write(const std::filesystem::path& path, std::string_view banner_text) const {
  write_text(path, render(banner_text));
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), fmt::format("cannot write '{}'", path.string()));
  out << text;
  out.close();
  require(!out.fail(), fmt::format("failed while writing '{}'", path.string()));
}

}  // namespace critcurve
