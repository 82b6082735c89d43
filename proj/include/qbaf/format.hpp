#pragma once

#include <cstdio>
#include <string>

namespace qbaf {

// Canonical number rendering for files and reports: up to 12 significant
// digits, locale-independent, identical bytes for identical values.
inline std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline std::string format_fixed(double value, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

} // namespace qbaf
