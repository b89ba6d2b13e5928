#pragma once

#include <cmath>
#include <vector>

#include "vqdyn/errors.hpp"

namespace vqdyn {

namespace detail {

// 15-point Kronrod nodes with the embedded 7-point Gauss weights
// (abscissa, Gauss weight, Kronrod weight); nonzero abscissae are mirrored.
inline constexpr double k_g7k15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
double gauss_kronrod_15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = b - mid;

    const double y0 = f(mid);
    double g7 = k_g7k15[0][1] * y0;
    double k15 = k_g7k15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * k_g7k15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += k_g7k15[i][1] * yi;
        k15 += k_g7k15[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    err = std::abs(k15 - g7);
    return k15;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration on [a, b]. Intervals split until the
/// local G7/K15 error estimate drops below rel_tol * |interval value| or the
/// absolute floor; running out of intervals raises numerical_error.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 0.0, int max_intervals = 4000) {
    if (a == b) return 0.0;
    std::vector<std::pair<double, double>> stack{{a, b}};
    stack.reserve(64);
    double total = 0.0;
    int used = 1;
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double s = detail::gauss_kronrod_15(f, lo, hi, err);
        if (err <= rel_tol * std::abs(s) || err <= abs_tol) {
            total += s;
            continue;
        }
        if (used + 2 > max_intervals)
            throw numerical_error("integrate_adaptive: interval budget exhausted");
        used += 2;
        const double mid = 0.5 * (lo + hi);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    return total;
}

}  // namespace vqdyn
