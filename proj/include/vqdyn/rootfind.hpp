#pragma once

#include <cmath>
#include <utility>

#include "vqdyn/errors.hpp"

namespace vqdyn {

struct RootResult {
    double x;
    double fx;
    double lo, hi;  ///< final bracket, f changes sign across it
    int iterations;
};

/// Bisection/secant hybrid on a sign-changing bracket; f(lo) and f(hi) are
/// passed in so callers can reuse their bracketing evaluations. A secant
/// proposal is taken only while it lands strictly inside the current bracket,
/// otherwise the step bisects. Stops at |f| <= f_tol; a collapsed bracket
/// that still misses f_tol raises numerical_error.
template <class F>
RootResult find_root(const F& f, double lo, double hi, double f_lo, double f_hi, double f_tol,
                     int max_iter = 400) {
    if (!(f_lo > 0.0) == !(f_hi > 0.0))
        throw std::invalid_argument("find_root: bracket does not change sign");

    double x = lo, fx = f_lo;
    for (int it = 1; it <= max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        // plain bisection every other step keeps false-position from
        // stagnating on one endpoint
        if (it % 2 == 1 && f_hi != f_lo) {
            const double sec = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (sec > std::min(lo, hi) && sec < std::max(lo, hi)) mid = sec;
        }
        x = mid;
        fx = f(x);
        if (std::abs(fx) <= f_tol) return {x, fx, lo, hi, it};
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if (lo == hi || std::abs(hi - lo) <= 4e-16 * std::max(std::abs(lo), std::abs(hi)))
            break;
    }
    if (std::abs(fx) <= f_tol) return {x, fx, lo, hi, max_iter};
    throw numerical_error("find_root: bracket collapsed before reaching the residual target");
}

}  // namespace vqdyn
