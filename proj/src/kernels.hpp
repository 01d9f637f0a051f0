#pragma once
// Internal helpers shared by the representation translation units.

#include <cmath>
#include <stdexcept>
#include <string>

namespace psirep::detail {

inline void require_positive(double a, const char* who) {
    if (!(a > 0.0)) throw std::domain_error(std::string(who) + ": requires a > 0");
}

// 1/(u-1) - 1/ln u, the common single-integral kernel; -1/2 at u = 1.
inline double digamma_kernel(double u) {
    double e = u - 1.0;
    if (std::fabs(e) < 1e-3) {
        return -0.5 +
               e * (1.0 / 12.0 + e * (-1.0 / 24.0 + e * (19.0 / 720.0 - e * 3.0 / 160.0)));
    }
    return 1.0 / e - 1.0 / std::log(u);
}

}  // namespace psirep::detail
