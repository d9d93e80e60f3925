#include "gam/format.hpp"

#include <cmath>
#include <cstdio>

namespace gam {

std::string format_number(double value, int significant) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, value);
    return buf;
}

}  // namespace gam
