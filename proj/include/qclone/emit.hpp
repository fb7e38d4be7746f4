#pragma once

#include <string>
#include <vector>

#include "json.hpp"

// Serialization of numeric result tables: CSV with a fixed significant-digit
// format and a JSON document carrying the run configuration alongside the
// rows.  Both outputs are byte-deterministic for identical inputs.
namespace qclone::emit {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns in size
};

// Shortest fixed rendering with 12 significant digits ("%.12g").
std::string formatDouble(double x);

// Header line plus one line per row, comma-separated, LF line endings,
// trailing newline.  Throws std::invalid_argument on a ragged table.
std::string toCsv(const Table& t);

// {"config": config, "rows": [...]} with each row an object keyed by column
// name, pretty-printed with two-space indent and a trailing newline.
std::string toJson(const Table& t, const nlohmann::json& config);

}  // namespace qclone::emit
