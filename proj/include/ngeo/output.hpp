#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ngeo::output {

/// One table row. Absent fields render as an empty TSV cell and JSON null.
struct OutputRow {
  std::optional<int> line;
  std::optional<std::int64_t> e, k, a, b, m;
  std::optional<std::int64_t> p_g;
  std::optional<std::string> k3;  // "p/q" or an integer
  std::optional<std::int64_t> p2;
  std::optional<std::string> basket;
  std::optional<std::string> region;

  friend bool operator==(const OutputRow&, const OutputRow&) = default;
};

/// Column names in output order.
const std::vector<std::string>& columns();

/// Header line then one line per row, tab-separated, '\n' terminated.
std::string to_tsv(const std::vector<OutputRow>& rows);

/// {"command": ..., "rows": [...]} on one line, '\n' terminated.
std::string to_json(const std::string& command, const std::vector<OutputRow>& rows);

/// Inverse of to_tsv; throws std::invalid_argument on malformed input.
std::vector<OutputRow> from_tsv(const std::string& text);

/// Inverse of to_json; throws std::invalid_argument on malformed input.
std::vector<OutputRow> from_json(const std::string& text);

}  // namespace ngeo::output
