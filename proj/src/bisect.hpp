#pragma once

#include <cmath>

namespace dkp::detail {

// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign (or one
// of them zero). Runs until the midpoint no longer separates the endpoints,
// i.e. to full double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo) {
    if (f_lo == 0.0) return lo;
    for (int it = 0; it < 256; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dkp::detail
