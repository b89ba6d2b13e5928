#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vqdyn/params.hpp"
#include "vqdyn/quadrature.hpp"
#include "vqdyn/rootfind.hpp"

namespace vqdyn {

/// Residual target for the bound-state root, in units of omega0.
inline constexpr double k_boundstate_residual_tol = 1e-10;

/// Bracketing constants: lo expands geometrically from -omega0, hi shrinks
/// from -1e-12 omega0 toward zero. The hi floor guards against asking for
/// roots below double-precision range (the binding energy vanishes roughly
/// like exp(-c/gamma0) at weak coupling, which underflows long before
/// gamma0 does).
inline constexpr double k_bracket_lo_seed = -1.0;
inline constexpr double k_bracket_lo_factor = 4.0;
inline constexpr int k_bracket_lo_cap = 60;
inline constexpr double k_bracket_hi_seed = -1e-12;
inline constexpr double k_bracket_hi_factor = 1e-6;
inline constexpr double k_bracket_hi_floor = -1e-300;

/// Lorentzian reservoir coupling density
///   J(omega) = gamma0 lambda^2 / (2 pi ((omega0 - omega)^2 + lambda^2)).
/// Total on any finite omega; the physical domain is omega >= 0, negative
/// arguments only arise in the infinite-band sampling of the bath oracle.
inline double spectral_density(const SystemParams& p, double omega) {
    const double d = p.omega0 - omega;
    return p.gamma0 * p.lambda * p.lambda / (2.0 * std::numbers::pi * (d * d + p.lambda * p.lambda));
}

/// Cross-channel density J'(omega) = theta J(omega).
inline double spectral_density_cross(const SystemParams& p, double omega) {
    return p.theta * spectral_density(p, omega);
}

/// I(E) = integral of J(omega)/(omega - E) over omega in [0, inf), E < 0.
/// Partial fractions give, with a = omega0 - E and A = 1/(a^2 + lambda^2),
///   I = (gamma0 lambda^2 / 2 pi) A [ (ln(omega0^2 + lambda^2) - 2 ln(-E))/2
///                                    + (a/lambda)(pi/2 + atan(omega0/lambda)) ].
/// The log-difference form keeps the value finite down to E = -DBL_MIN.
inline double dispersion_integral(const SystemParams& p, double energy) {
    p.validate();
    if (!std::isfinite(energy) || energy >= 0.0)
        throw std::invalid_argument("dispersion_integral: energy must be finite and < 0");
    const double a = p.omega0 - energy;
    const double l2 = p.lambda * p.lambda;
    const double scale = 1.0 / (a * a + l2);
    const double log_term =
        0.5 * (std::log(p.omega0 * p.omega0 + l2) - 2.0 * std::log(-energy));
    const double arc_term =
        (a / p.lambda) * (0.5 * std::numbers::pi + std::atan(p.omega0 / p.lambda));
    return p.gamma0 * l2 / (2.0 * std::numbers::pi) * scale * (log_term + arc_term);
}

/// Quadrature cross-check of dispersion_integral: adaptive Gauss-Kronrod on
/// [0, omega0 + 50 lambda], plus the tail mapped onto [0, 1] through
/// omega = Omega/x so it is integrated rather than merely bounded. Test
/// oracle; the closed form above is the runtime path.
inline double dispersion_integral_quadrature(const SystemParams& p, double energy) {
    p.validate();
    if (!std::isfinite(energy) || energy >= 0.0)
        throw std::invalid_argument("dispersion_integral_quadrature: energy must be < 0");
    const double cut = p.omega0 + 50.0 * p.lambda;
    const auto f = [&](double w) { return spectral_density(p, w) / (w - energy); };
    const double bulk = integrate_adaptive(f, 0.0, cut, 1e-12, 0.0, 20000);
    const auto tail = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double w = cut / x;
        return f(w) * cut / (x * x);
    };
    const double rest = integrate_adaptive(tail, 0.0, 1.0, 1e-12, 0.0, 20000);
    return bulk + rest;
}

struct BoundStateResult {
    double energy;      ///< E < 0, in units of omega0's scale
    double residual;    ///< |omega0 - N(1+theta) I(E) - E|
    double bracket_lo;  ///< final bracket, F changes sign across it
    double bracket_hi;
    int iterations;
};

/// Root of F(E) = omega0 - N(1+theta) I(E) - E on E < 0. I is strictly
/// increasing there, so F is strictly decreasing and the root is unique.
/// lo expands by k_bracket_lo_factor until F(lo) > 0; hi shrinks from
/// k_bracket_hi_seed toward zero until F(hi) < 0, stopping at the floor. The
/// hybrid search then runs in u = ln(-E), where the root's many-decade scale
/// becomes a modest interval. Exhausting either bracketing cap reports
/// numerical_error (at weak coupling the root genuinely underflows doubles).
inline BoundStateResult bound_state_energy(const SystemParams& p) {
    p.validate();
    if (p.gamma0 <= 0.0)
        throw std::invalid_argument("bound_state_energy: gamma0 must be > 0");

    const double strength = static_cast<double>(p.n_atoms) * (1.0 + p.theta);
    const auto f_of_e = [&](double e) {
        return p.omega0 - strength * dispersion_integral(p, e) - e;
    };

    double lo = k_bracket_lo_seed * p.omega0;
    double f_lo = f_of_e(lo);
    int expansions = 0;
    while (f_lo <= 0.0) {
        if (++expansions > k_bracket_lo_cap)
            throw numerical_error("bound_state_energy: lower bracket expansion cap exhausted");
        lo *= k_bracket_lo_factor;
        f_lo = f_of_e(lo);
    }

    const double hi_floor = k_bracket_hi_floor * p.omega0;
    double hi = k_bracket_hi_seed * p.omega0;
    double f_hi = f_of_e(hi);
    while (f_hi >= 0.0) {
        if (hi == hi_floor)
            throw numerical_error(
                "bound_state_energy: bound state is shallower than double precision can "
                "represent (binding energy underflows); increase gamma0, theta or n_atoms");
        hi *= k_bracket_hi_factor;
        if (hi > hi_floor) hi = hi_floor;
        f_hi = f_of_e(hi);
    }

    const double u_lo = std::log(-lo);  // deep end, F > 0
    const double u_hi = std::log(-hi);  // shallow end, F < 0
    const auto f_of_u = [&](double u) { return f_of_e(-std::exp(u)); };
    const double tol = k_boundstate_residual_tol * p.omega0;
    const RootResult r = find_root(f_of_u, u_lo, u_hi, f_lo, f_hi, tol);

    BoundStateResult out;
    out.energy = -std::exp(r.x);
    out.residual = std::abs(r.fx);
    // u brackets map back to energies with the order reversed
    out.bracket_lo = -std::exp(std::max(r.lo, r.hi));
    out.bracket_hi = -std::exp(std::min(r.lo, r.hi));
    out.iterations = r.iterations;
    return out;
}

struct SpectrumScanRow {
    double gamma0 = 0.0;
    int n_atoms = 0;
    bool converged = false;
    BoundStateResult result{};
    std::string message;
};

/// One bound-state solve per (N, gamma0) grid point, rows in grid order with
/// n_list outermost (one block per curve). Solver failures mark their row and
/// the scan continues.
inline std::vector<SpectrumScanRow> spectrum_scan(const SystemParams& base,
                                                  std::span<const double> gamma0_grid,
                                                  std::span<const int> n_list) {
    if (gamma0_grid.empty() || n_list.empty())
        throw std::invalid_argument("spectrum_scan: grids must be non-empty");
    std::vector<SpectrumScanRow> rows;
    rows.reserve(gamma0_grid.size() * n_list.size());
    for (int n : n_list) {
        for (double g : gamma0_grid) {
            SpectrumScanRow row;
            row.gamma0 = g;
            row.n_atoms = n;
            SystemParams p = base;
            p.gamma0 = g;
            p.n_atoms = n;
            try {
                row.result = bound_state_energy(p);
                row.converged = true;
            } catch (const std::exception& e) {
                row.message = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace vqdyn
