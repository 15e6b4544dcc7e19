#pragma once

// Locale-independent numeric formatting for CSV artifacts.  Everything
// downstream diffs these files byte-for-byte, so one formatter rules all.

#include <cstdio>
#include <string>

namespace cuspv {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

inline std::string fmt_int(long long v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", v);
    return buf;
}

} // namespace cuspv
