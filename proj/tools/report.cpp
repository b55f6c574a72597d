#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace schauder::cli {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      // nlohmann objects are std::map backed: iteration is key-sorted
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        dump(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
  return a;
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks)
    a.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}});
  return a;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void write_csv(std::ostream& out, const Json& config, const Table& table) {
  out << "# " << canonical_dump(config) << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "");
      const auto& cell = row[c];
      if (cell.is_string()) out << cell.get<std::string>();
      else if (cell.is_number_float()) out << (std::isfinite(cell.get<double>()) ? format_double(cell.get<double>()) : "nan");
      else if (cell.is_null()) out << "nan";
      else out << cell.dump();
    }
    out << '\n';
  }
}

}  // namespace schauder::cli
