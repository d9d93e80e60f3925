#pragma once

#include <string>

namespace gam {

// Shortest round-trip-safe rendering is not needed; reports use 9 significant
// digits with '.' as the decimal separator regardless of locale.
std::string format_number(double value, int significant = 9);

}  // namespace gam
