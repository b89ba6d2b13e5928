// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Run directly or through ctest (test name "acceptance").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vqdyn/bath.hpp"
#include "vqdyn/boundstate.hpp"
#include "vqdyn/channel.hpp"
#include "vqdyn/experiments.hpp"
#include "vqdyn/negativity.hpp"
#include "vqdyn/propagator.hpp"

using namespace vqdyn;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

SystemParams fig_params(double gamma0, double theta, int n) {
    SystemParams p;
    p.gamma0 = gamma0;
    p.lambda = 0.8;
    p.theta = theta;
    p.n_atoms = n;
    return p;
}

std::string fmt(double v) { return format_significant(v, 3); }

CMat<3> random_unitary3(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    auto u = CMat<3>::identity();
    for (std::size_t i = 0; i < 3; ++i) u(i, i) = std::exp(cdouble(0.0, angle(rng)));
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = p + 1; q < 3; ++q) {
            auto r = CMat<3>::identity();
            const double phi = 0.5 * angle(rng);
            const cdouble s = std::sin(phi) * std::exp(cdouble(0.0, angle(rng)));
            r(p, p) = std::cos(phi);
            r(p, q) = s;
            r(q, p) = -std::conj(s);
            r(q, q) = std::cos(phi);
            u = u * r;
        }
    return u;
}

Mat9 random_density9(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Mat9 rho;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        std::array<cdouble, 9> v{};
        double nn = 0.0;
        for (auto& z : v) {
            z = cdouble(gauss(rng), gauss(rng));
            nn += std::norm(z);
        }
        for (auto& z : v) z /= std::sqrt(nn);
        const double w = u01(rng) + 1e-3;
        rho += w * outer(v);
        total += w;
    }
    rho *= cdouble(1.0 / total);
    return rho;
}

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SystemParams p;
    p.gamma0 = 0.05 + 2.0 * u01(rng);
    p.lambda = 0.2 + 1.5 * u01(rng);
    p.theta = u01(rng);
    p.n_atoms = 1 + static_cast<int>(8.0 * u01(rng));
    return p;
}

// 1. negativity of the maximally entangled pair is 1; the partial-transpose
//    spectrum is {-1/3 x3, +1/3 x6}
bool criterion_initial_entanglement(std::string& detail) {
    const Mat9 rho = entangled_pair_state();
    const double neg = negativity(rho);
    const auto spec = hermitian_eigenvalues(partial_transpose(rho, Subsystem::first));
    double spec_dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        spec_dev = std::max(spec_dev, std::abs(spec.eigenvalues[i] + 1.0 / 3.0));
    for (std::size_t i = 3; i < 9; ++i)
        spec_dev = std::max(spec_dev, std::abs(spec.eigenvalues[i] - 1.0 / 3.0));
    detail = "|N-1| = " + fmt(std::abs(neg - 1.0)) + ", spectrum dev = " + fmt(spec_dev);
    return std::abs(neg - 1.0) <= 1e-10 && spec_dev <= 1e-8;
}

// 2. weak interference, single pair: entanglement is gone by t = 50
bool criterion_decay_asymptote(std::string& detail) {
    const double neg = negativity_at(fig_params(1.0, 0.5, 1), 50.0);
    detail = "negativity(50) = " + fmt(neg);
    return neg < 1e-3;
}

// 3. full interference, single pair: a steady value above 0.05 that matches
//    the exact limit channel (g1, g2) = (1/2, -1/2)
bool criterion_steady_asymptote(std::string& detail) {
    const double neg = negativity_at(fig_params(1.0, 1.0, 1), 50.0);
    const double limit =
        negativity(apply_two(entangled_pair_state(), kraus_set(0.5, -0.5)));
    detail = "negativity(50) = " + fmt(neg) + ", limit = " + fmt(limit);
    return std::abs(neg - limit) <= 1e-3 && neg > 0.05;
}

// 4. protection ordering at t = 10: non-decreasing in N at theta = 1, and
//    theta = 1 at least as protected as theta = 0.5, for each gamma0
bool criterion_protection_ordering(std::string& detail) {
    const int ns[] = {1, 3, 6, 9};
    for (double g : {0.25, 0.5, 1.0}) {
        double prev = -1.0;
        for (int n : ns) {
            const double strong = negativity_at(fig_params(g, 1.0, n), 10.0);
            const double weak = negativity_at(fig_params(g, 0.5, n), 10.0);
            if (strong < prev) {
                detail = "N ordering broken at gamma0 = " + fmt(g) + ", N = " + std::to_string(n);
                return false;
            }
            if (strong < weak) {
                detail = "theta ordering broken at gamma0 = " + fmt(g) +
                         ", N = " + std::to_string(n);
                return false;
            }
            prev = strong;
        }
    }
    detail = "24 grid points ordered";
    return true;
}

// 5. bound-state solver: residuals, strict monotonicity along every axis of a
//    10 x 10 x 3 grid, and product invariance across 20 matched pairs
bool criterion_bound_state(std::string& detail) {
    const std::vector<double> gammas = [] {
        std::vector<double> g;
        for (int i = 0; i < 10; ++i) g.push_back(0.1 + 0.9 * i / 9.0);
        return g;
    }();
    const std::vector<double> thetas = {0.0, 0.5, 1.0};

    double worst_residual = 0.0;
    std::vector<double> energy(10 * 10 * 3);
    const auto at = [&](int ig, int in, int it) -> double& {
        return energy[(static_cast<std::size_t>(ig) * 10 + static_cast<std::size_t>(in)) * 3 +
                      static_cast<std::size_t>(it)];
    };
    for (int ig = 0; ig < 10; ++ig)
        for (int in = 0; in < 10; ++in)
            for (int it = 0; it < 3; ++it) {
                const auto res =
                    bound_state_energy(fig_params(gammas[ig], thetas[it], in + 1));
                worst_residual = std::max(worst_residual, res.residual);
                at(ig, in, it) = res.energy;
            }
    if (worst_residual > 1e-10) {
        detail = "residual " + fmt(worst_residual);
        return false;
    }
    for (int ig = 0; ig < 10; ++ig)
        for (int in = 0; in < 10; ++in)
            for (int it = 0; it < 3; ++it) {
                if (ig + 1 < 10 && at(ig + 1, in, it) >= at(ig, in, it)) {
                    detail = "not decreasing in gamma0";
                    return false;
                }
                if (in + 1 < 10 && at(ig, in + 1, it) >= at(ig, in, it)) {
                    detail = "not decreasing in N";
                    return false;
                }
                if (it + 1 < 3 && at(ig, in, it + 1) >= at(ig, in, it)) {
                    detail = "not decreasing in theta";
                    return false;
                }
            }

    // matched pairs: (N, theta, gamma0) vs (N', theta', gamma0') with equal
    // N(1+theta)gamma0
    double worst_pair = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double g = 0.15 + 0.09 * i;
        const auto a = bound_state_energy(fig_params(g, 1.0, 2));        // product 4g
        const auto b = bound_state_energy(fig_params(2.0 * g, 0.0, 2));  // product 4g
        worst_pair = std::max(worst_pair, std::abs(a.energy - b.energy));
    }
    detail = "max residual " + fmt(worst_residual) + ", max pair gap " + fmt(worst_pair);
    return worst_pair <= 1e-10;
}

// 6. dispersion integral: closed form vs adaptive quadrature on 50 log-spaced
//    energies in [-1e3, -1e-6]
bool criterion_dispersion(std::string& detail) {
    const auto p = fig_params(1.0, 0.5, 1);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double e = -std::pow(10.0, -6.0 + 9.0 * i / 49.0);
        const double closed = dispersion_integral(p, e);
        const double quad = dispersion_integral_quadrature(p, e);
        worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
    }
    detail = "max relative gap " + fmt(worst);
    return worst <= 1e-8;
}

// 7. CPTP: 1000 propagator-generated Kraus sets
bool criterion_cptp(std::string& detail) {
    std::mt19937_64 rng(0xACCE97ULL);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_complete = 0.0, worst_trace = 0.0, min_eig = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemParams p = random_params(rng);
        const auto pair = atom_propagators(p, 12.0 * u01(rng));
        const auto ks = kraus_set(pair.g1, pair.g2);
        worst_complete = std::max(worst_complete, completeness_deviation(ks));
        const Mat9 rho = (i % 2 == 0) ? entangled_pair_state() : random_density9(rng);
        const Mat9 out = apply_two(rho, ks);
        worst_trace = std::max(worst_trace, std::abs(out.trace() - cdouble(1.0)));
        min_eig = std::min(min_eig, hermitian_eigensystem(hermitize(out)).values.front());
    }
    detail = "completeness " + fmt(worst_complete) + ", trace " + fmt(worst_trace) +
             ", min eig " + fmt(min_eig);
    return worst_complete <= 1e-10 && worst_trace <= 1e-10 && min_eig >= -1e-9;
}

// 8. discretized-bath oracle matches the closed-form amplitudes to 1e-3 over
//    t in [0, 10] for theta in {0, 0.5, 1} x N in {1, 2, 4}
bool criterion_oracle(std::string& detail) {
    double worst = 0.0, worst_drift = 0.0;
    for (double theta : {0.0, 0.5, 1.0})
        for (int n : {1, 2, 4}) {
            const auto p = fig_params(1.0, theta, n);
            const double w = 40.0 * p.lambda;
            const auto bath = build_bath(p, 4000, w, false);
            AmplitudeState init;
            init.zeta0 = 0.0;
            init.zeta_a.assign(static_cast<std::size_t>(n), cdouble{});
            init.zeta_b.assign(static_cast<std::size_t>(n), cdouble{});
            init.zeta_a[0] = 0.8;
            init.zeta_b[0] = 0.6;
            const auto traj = simulate(p, bath, init, 10.0, 0.1 / w);
            worst_drift = std::max(worst_drift, traj.norm_drift);
            for (std::size_t i = 0; i < traj.times.size(); i += 8) {
                const auto pair = atom_propagators(p, traj.times[i]);
                const cdouble ra = pair.g1 * init.zeta_a[0] + pair.g2 * init.zeta_b[0];
                const cdouble rb = pair.g2 * init.zeta_a[0] + pair.g1 * init.zeta_b[0];
                worst = std::max({worst, std::abs(traj.zeta_a[0][i] - ra),
                                  std::abs(traj.zeta_b[0][i] - rb)});
            }
        }
    detail = "max amplitude gap " + fmt(worst) + ", max drift " + fmt(worst_drift);
    return worst <= 1e-3 && worst_drift <= 1e-8;
}

// 9. amplitude-built density equals the Kraus-evolved one for 100 random pure
//    single-excitation inputs
bool criterion_density_equivalence(std::string& detail) {
    std::mt19937_64 rng(0xD45ULL);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SystemParams p = random_params(rng);
        const double t = 10.0 * u01(rng);
        const double mix = u01(rng);
        const cdouble za0 =
            std::sqrt(mix) * std::exp(cdouble(0.0, 2.0 * std::numbers::pi * u01(rng)));
        const cdouble zb0 = std::sqrt(1.0 - mix) *
                            std::exp(cdouble(0.0, 2.0 * std::numbers::pi * u01(rng)));
        const auto pair = atom_propagators(p, t);
        const Mat3 direct = density_from_amplitudes(pair.g1 * za0 + pair.g2 * zb0,
                                                    pair.g2 * za0 + pair.g1 * zb0, 0.0);
        const Mat3 channeled =
            apply_single(density_from_amplitudes(za0, zb0, 0.0), kraus_set(pair.g1, pair.g2));
        worst = std::max(worst, (direct - channeled).max_abs());
    }
    detail = "max entry gap " + fmt(worst);
    return worst <= 1e-10;
}

// 10. negativity is invariant under 50 random local-unitary conjugations of
//     evolved states
bool criterion_lu_invariance(std::string& detail) {
    std::mt19937_64 rng(0x10CA1ULL);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto p = fig_params(0.2 + 1.3 * u01(rng), u01(rng), 1 + (i % 5));
        const auto pair = atom_propagators(p, 8.0 * u01(rng));
        const Mat9 rho = apply_two(entangled_pair_state(), kraus_set(pair.g1, pair.g2));
        const double base = negativity(rho);
        const Mat9 w = kron(random_unitary3(rng), random_unitary3(rng));
        worst = std::max(worst, std::abs(negativity(w * rho * w.adjoint()) - base));
    }
    detail = "max negativity shift " + fmt(worst);
    return worst <= 1e-8;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"initial entanglement of the maximally entangled pair", criterion_initial_entanglement},
        {"weak-interference decay asymptote (gamma0=1, theta=0.5, N=1)", criterion_decay_asymptote},
        {"full-interference steady value matches the exact limit", criterion_steady_asymptote},
        {"protection ordering over N and theta at t=10", criterion_protection_ordering},
        {"bound-state residuals, monotonicity, product invariance", criterion_bound_state},
        {"dispersion integral closed form vs quadrature", criterion_dispersion},
        {"CPTP suite on 1000 propagator-generated channels", criterion_cptp},
        {"discretized-bath oracle vs analytic amplitudes", criterion_oracle},
        {"amplitude-built vs Kraus-evolved densities", criterion_density_equivalence},
        {"local-unitary invariance of negativity", criterion_lu_invariance},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %zu. %s (%s) [%.2f s]\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures)
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
