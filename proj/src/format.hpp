#pragma once

#include <cstdio>
#include <string>

namespace qstats::detail {

/// Round-trippable decimal form (17 significant digits).
inline std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace qstats::detail
