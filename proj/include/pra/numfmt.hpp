#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace pra {

/// Round half away from zero at `digits` decimal places.
inline double round_to(double v, int digits) {
    double scale = 1.0;
    for (int i = 0; i < digits; ++i) scale *= 10.0;
    return static_cast<double>(std::llround(v * scale)) / scale;
}

/// Fixed-point text with exactly `digits` decimals ("0.98", "-0.170000").
inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace pra
