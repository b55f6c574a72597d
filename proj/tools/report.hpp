#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace schauder::cli {

using Json = nlohmann::json;

/// Sorted keys, no whitespace, doubles as %.17g, non-finite doubles as null.
std::string canonical_dump(const Json& j);

/// JSON array of doubles; NaN and infinities become null.
Json number_array(const std::vector<double>& v);

/// One asserted property in a report.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

Json checks_json(const std::vector<Check>& checks);
bool all_passed(const std::vector<Check>& checks);

/// Plot-ready table; cells are numbers or strings.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

/// "# " + canonical config JSON, then the table; numbers as %.17g.
void write_csv(std::ostream& out, const Json& config, const Table& table);

}  // namespace schauder::cli
