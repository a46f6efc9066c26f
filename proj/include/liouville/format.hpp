#pragma once

#include <string>

namespace liouville {

/// Shortest round-trip decimal form of x ("inf", "-inf", "nan" for non-finite).
std::string fmt(double x);

}  // namespace liouville
