#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vqdyn/matrix.hpp"
#include "vqdyn/params.hpp"

namespace vqdyn {

/// |D| below this fraction of lambda switches the mode propagator to its
/// series limit. The hyperbolic form loses roughly eps*lambda/|D| digits to
/// cancellation while the truncated series is off by O((Dt/2)^4 e^{-lambda
/// t/2}); at 1e-4 both stay near 1e-12.
inline constexpr double k_degenerate_branch_tol = 1e-4;

struct BranchExponents {
    cdouble plus;
    cdouble minus;
};

/// Exponents of the collective symmetric (+) and antisymmetric (-) decay
/// branches, sqrt(lambda^2 - 2*gamma0*(1 +- theta)*lambda*N). A negative
/// radicand yields the principal root on the positive imaginary axis.
inline BranchExponents branch_exponents(const SystemParams& p) {
    p.validate();
    const double l2 = p.lambda * p.lambda;
    const double common = 2.0 * p.gamma0 * p.lambda * static_cast<double>(p.n_atoms);
    return {std::sqrt(cdouble(l2 - common * (1.0 + p.theta), 0.0)),
            std::sqrt(cdouble(l2 - common * (1.0 - p.theta), 0.0))};
}

namespace detail {

/// exp(-lambda t/2) (cosh(D t/2) + (lambda/D) sinh(D t/2)) rewritten as
///   (1 + lambda/D)/2 exp((D - lambda) t/2) + (1 - lambda/D)/2 exp(-(D + lambda) t/2).
/// Re(D) never exceeds lambda, so both exponents have non-positive real part
/// and the evaluation cannot overflow at large t.
inline cdouble mode_propagator_one(double lambda, double t, cdouble d) {
    if (std::abs(d) < k_degenerate_branch_tol * lambda) {
        // limit D -> 0 plus the first series correction in D^2
        const cdouble d2 = d * d;
        return std::exp(-0.5 * lambda * t) *
               (1.0 + 0.5 * lambda * t + d2 * (t * t / 8.0 + lambda * t * t * t / 48.0));
    }
    const cdouble r = lambda / d;
    const cdouble half = 0.5 * t;
    return 0.5 * (1.0 + r) * std::exp((d - lambda) * half) +
           0.5 * (1.0 - r) * std::exp(-(d + lambda) * half);
}

}  // namespace detail

/// Collective mode propagators (G+, G-) at time t >= 0. G(0) = 1 and
/// |G(t)| <= 1 on both the overdamped (real D) and oscillatory (imaginary D)
/// branches.
inline std::pair<cdouble, cdouble> mode_propagators(const SystemParams& p, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("mode_propagators: t must be finite and >= 0");
    const auto d = branch_exponents(p);
    return {detail::mode_propagator_one(p.lambda, t, d.plus),
            detail::mode_propagator_one(p.lambda, t, d.minus)};
}

/// Collective propagators together with the single-atom transfer amplitudes:
/// g1 carries an atom's excitation within the same level, g2 transfers it
/// between the two upper levels. They satisfy N(g1+g2) - (N-1) = G+ and
/// N(g1-g2) - (N-1) = G-.
struct PropagatorPair {
    cdouble g_plus;
    cdouble g_minus;
    cdouble g1;
    cdouble g2;
    double time = 0.0;
};

inline PropagatorPair atom_propagators(const SystemParams& p, double t) {
    const auto [gp, gm] = mode_propagators(p, t);
    const double n = static_cast<double>(p.n_atoms);
    const double mix = (n - 1.0) / (2.0 * n);
    PropagatorPair out;
    out.g_plus = gp;
    out.g_minus = gm;
    out.g1 = 0.5 * (gp + gm) + mix * (2.0 - gp - gm);
    out.g2 = 0.5 * (gp - gm) + mix * (gm - gp);
    out.time = t;
    return out;
}

/// Single-excitation amplitudes: the constant ground amplitude zeta0 plus one
/// (A, B) amplitude pair per atom. Reservoir-mode population accounts for the
/// deficit 1 - |zeta0|^2 - atomic_population().
struct AmplitudeState {
    cdouble zeta0;
    std::vector<cdouble> zeta_a;
    std::vector<cdouble> zeta_b;

    double atomic_population() const {
        double s = 0.0;
        for (const auto& z : zeta_a) s += std::norm(z);
        for (const auto& z : zeta_b) s += std::norm(z);
        return s;
    }

    void validate() const {
        if (zeta_a.size() != zeta_b.size() || zeta_a.empty())
            throw std::invalid_argument(
                "AmplitudeState: zeta_a and zeta_b must be non-empty and equally sized");
        const double total = std::norm(zeta0) + atomic_population();
        if (total > 1.0 + 1e-9)
            throw std::invalid_argument("AmplitudeState: norm exceeds 1");
    }
};

/// Closed-form evolution of all atomic amplitudes. In the +- combinations
/// zeta_l(t) = G zeta_l(0) - (1-G)/N * sum_{j != l}(zeta_j(0) - zeta_l(0)),
/// and the pairwise sum collapses to S - N zeta_l, so each amplitude just
/// loses (1-G)/N times the collective sum. zeta0 is a constant of motion.
inline AmplitudeState evolve_amplitudes(const SystemParams& p, const AmplitudeState& initial,
                                        double t) {
    p.validate();
    initial.validate();
    if (initial.zeta_a.size() != static_cast<std::size_t>(p.n_atoms))
        throw std::invalid_argument("evolve_amplitudes: state size does not match n_atoms");
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("evolve_amplitudes: t must be finite and >= 0");

    const auto [gp, gm] = mode_propagators(p, t);
    const std::size_t n = initial.zeta_a.size();

    cdouble sum_p = 0.0, sum_m = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        sum_p += initial.zeta_a[l] + initial.zeta_b[l];
        sum_m += initial.zeta_a[l] - initial.zeta_b[l];
    }
    const cdouble loss_p = (1.0 - gp) / static_cast<double>(n) * sum_p;
    const cdouble loss_m = (1.0 - gm) / static_cast<double>(n) * sum_m;

    AmplitudeState out = initial;
    for (std::size_t l = 0; l < n; ++l) {
        const cdouble zp = (initial.zeta_a[l] + initial.zeta_b[l]) - loss_p;
        const cdouble zm = (initial.zeta_a[l] - initial.zeta_b[l]) - loss_m;
        out.zeta_a[l] = 0.5 * (zp + zm);
        out.zeta_b[l] = 0.5 * (zp - zm);
    }
    return out;
}

}  // namespace vqdyn
