#pragma once

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

namespace ebel {

// Shortest decimal string that round-trips to the same double. Keeps CSV
// output stable across platforms and easy to diff.
inline std::string fmt_double(double x) {
    if (x != x) return "nan";
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    if (x == static_cast<long long>(x) && x > -1e15 && x < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(x));
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

// Fixed 6-significant-digit rendering for human-facing summary columns.
inline std::string fmt_double6(double x) {
    if (x != x) return "nan";
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace ebel
