#include "qclone/emit.hpp"

#include <cstdio>
#include <stdexcept>

namespace qclone::emit {

namespace {

void requireRectangular(const Table& t) {
  for (const auto& row : t.rows)
    if (row.size() != t.columns.size())
      throw std::invalid_argument("emit: row width does not match header");
}

}  // namespace

std::string formatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string toCsv(const Table& t) {
  requireRectangular(t);
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += formatDouble(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string toJson(const Table& t, const nlohmann::json& config) {
  requireRectangular(t);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  const nlohmann::json doc = {{"config", config}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace qclone::emit
