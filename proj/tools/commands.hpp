#pragma once

#include <ostream>

namespace schauder::cli {

/// Exit codes: 0 ok, 2 an asserted property failed (report still written),
/// 1 usage, input or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schauder::cli
