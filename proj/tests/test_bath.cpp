#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "vqdyn/bath.hpp"
#include "vqdyn/propagator.hpp"

using namespace vqdyn;

namespace {

SystemParams fig_params(double theta, int n) {
    SystemParams p;
    p.gamma0 = 1.0;
    p.lambda = 0.8;
    p.theta = theta;
    p.n_atoms = n;
    return p;
}

AmplitudeState atom1_state(int n, cdouble za, cdouble zb) {
    AmplitudeState s;
    s.zeta0 = 0.0;
    s.zeta_a.assign(static_cast<std::size_t>(n), cdouble{});
    s.zeta_b.assign(static_cast<std::size_t>(n), cdouble{});
    s.zeta_a[0] = za;
    s.zeta_b[0] = zb;
    return s;
}

/// discretized memory kernel sum_k |g_k|^2 e^{i (omega0 - omega_k) tau}
cdouble kernel_sum(const SystemParams& p, const DiscretizedBath& bath, double tau) {
    cdouble acc{};
    for (std::size_t k = 0; k < bath.mode_count(); ++k) {
        const auto& ga = bath.couplings_a[k];
        const double g2 = ga[0] * ga[0] + ga[1] * ga[1];
        const double ang = (p.omega0 - bath.mode_freqs[k]) * tau;
        acc += g2 * cdouble(std::cos(ang), std::sin(ang));
    }
    return acc;
}

cdouble cross_kernel_sum(const SystemParams& p, const DiscretizedBath& bath, double tau) {
    cdouble acc{};
    for (std::size_t k = 0; k < bath.mode_count(); ++k) {
        const auto& ga = bath.couplings_a[k];
        const auto& gb = bath.couplings_b[k];
        const double dot = ga[0] * gb[0] + ga[1] * gb[1];
        const double ang = (p.omega0 - bath.mode_freqs[k]) * tau;
        acc += dot * cdouble(std::cos(ang), std::sin(ang));
    }
    return acc;
}

}  // namespace

TEST_CASE("bath construction geometry") {
    SECTION("theta = 1: parallel couplings, theta = 0: orthogonal ones") {
        const auto parallel = build_bath(fig_params(1.0, 1), 64, 8.0, false);
        for (std::size_t k = 0; k < parallel.mode_count(); ++k) {
            REQUIRE(parallel.couplings_b[k][1] == 0.0);
            REQUIRE(parallel.couplings_b[k][0] == parallel.couplings_a[k][0]);
        }
        const auto ortho = build_bath(fig_params(0.0, 1), 64, 8.0, false);
        for (std::size_t k = 0; k < ortho.mode_count(); ++k) {
            const auto& ga = ortho.couplings_a[k];
            const auto& gb = ortho.couplings_b[k];
            REQUIRE(std::abs(ga[0] * gb[0] + ga[1] * gb[1]) == 0.0);
        }
    }

    SECTION("cross overlap equals theta exactly for every mode") {
        const auto p = fig_params(0.7, 1);
        const auto bath = build_bath(p, 128, 10.0, false);
        for (std::size_t k = 0; k < bath.mode_count(); ++k) {
            const auto& ga = bath.couplings_a[k];
            const auto& gb = bath.couplings_b[k];
            const double dot = ga[0] * gb[0] + ga[1] * gb[1];
            const double na = std::hypot(ga[0], ga[1]);
            const double nb = std::hypot(gb[0], gb[1]);
            REQUIRE(std::abs(dot / (na * nb) - 0.7) < 1e-15);
        }
    }

    SECTION("cutoff clips the band at zero") {
        const auto p = fig_params(0.5, 1);
        const auto clipped = build_bath(p, 64, 32.0, true);
        REQUIRE(clipped.band_lo == 0.0);
        REQUIRE(clipped.band_hi == p.omega0 + 32.0);
        for (double w : clipped.mode_freqs) REQUIRE(w > 0.0);
        const auto open = build_bath(p, 64, 32.0, false);
        REQUIRE(open.band_lo == p.omega0 - 32.0);
    }

    SECTION("argument validation") {
        REQUIRE_THROWS_AS(build_bath(fig_params(0.5, 1), 1, 8.0, false), std::invalid_argument);
        REQUIRE_THROWS_AS(build_bath(fig_params(0.5, 1), 64, 0.0, false), std::invalid_argument);
    }
}

TEST_CASE("kernel reconstruction against the Lorentzian transform") {
    const auto p = fig_params(0.5, 1);
    // infinite-band transform of J: (gamma0 lambda / 2) e^{-lambda |tau|}
    const auto analytic = [&](double tau) {
        return 0.5 * p.gamma0 * p.lambda * std::exp(-p.lambda * std::abs(tau));
    };

    // at W = 40 lambda the truncated Lorentzian tail costs about 1.6e-2
    // relative; doubling the band brings the reconstruction under 1e-2
    const auto bath40 = build_bath(p, 4000, 40.0 * p.lambda, false);
    const auto bath80 = build_bath(p, 4000, 80.0 * p.lambda, false);
    double worst40 = 0.0, worst80 = 0.0;
    for (int i = 0; i <= 80; ++i) {
        const double tau = 5.0 / p.lambda * i / 80.0;
        const double ref = analytic(tau);
        worst40 = std::max(worst40, std::abs(kernel_sum(p, bath40, tau) - ref) / ref);
        worst80 = std::max(worst80, std::abs(kernel_sum(p, bath80, tau) - ref) / ref);
    }
    REQUIRE(worst40 < 2e-2);
    REQUIRE(worst80 < 1e-2);

    // the cross kernel is exactly theta times the diagonal one
    for (double tau : {0.0, 0.7, 3.1}) {
        const auto diag = kernel_sum(p, bath40, tau);
        const auto cross = cross_kernel_sum(p, bath40, tau);
        REQUIRE(std::abs(cross - p.theta * diag) < 1e-15);
    }
}

TEST_CASE("free atoms stay put") {
    auto p = fig_params(0.5, 2);
    p.gamma0 = 0.0;
    const auto bath = build_bath(p, 128, 8.0, false);
    const auto init = atom1_state(2, cdouble(0.6, 0.2), cdouble(0.3, -0.1));
    const auto traj = simulate(p, bath, init, 2.0, 0.01);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        REQUIRE(std::abs(traj.zeta_a[0][i] - init.zeta_a[0]) < 1e-14);
        REQUIRE(std::abs(traj.zeta_b[0][i] - init.zeta_b[0]) < 1e-14);
    }
    REQUIRE(traj.norm_drift < 1e-14);
}

TEST_CASE("oracle matches the closed-form propagator") {
    const auto p = fig_params(0.5, 1);
    const double w = 40.0 * p.lambda;
    const auto bath = build_bath(p, 800, w, false);
    const auto init = atom1_state(1, 0.8, 0.6);
    const double dt = 0.1 / w;
    const auto traj = simulate(p, bath, init, 10.0, dt);
    REQUIRE(traj.norm_drift <= 1e-8);

    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); i += 16) {
        const auto pair = atom_propagators(p, traj.times[i]);
        const cdouble ref_a = pair.g1 * init.zeta_a[0] + pair.g2 * init.zeta_b[0];
        const cdouble ref_b = pair.g2 * init.zeta_a[0] + pair.g1 * init.zeta_b[0];
        worst = std::max({worst, std::abs(traj.zeta_a[0][i] - ref_a),
                          std::abs(traj.zeta_b[0][i] - ref_b)});
    }
    REQUIRE(worst < 1e-3);
}

TEST_CASE("oracle matches evolve_amplitudes for distinct multi-atom states") {
    auto p = fig_params(0.7, 3);
    p.gamma0 = 0.8;
    const double w = 40.0 * p.lambda;
    const auto bath = build_bath(p, 800, w, false);

    AmplitudeState s;
    s.zeta0 = 0.0;
    s.zeta_a = {cdouble(0.5, 0.1), cdouble(-0.2, 0.3), cdouble(0.1, 0.0)};
    s.zeta_b = {cdouble(0.0, -0.4), cdouble(0.3, 0.2), cdouble(-0.1, 0.1)};

    const auto traj = simulate(p, bath, s, 5.0, 0.1 / w);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); i += 64) {
        const auto ref = evolve_amplitudes(p, s, traj.times[i]);
        for (std::size_t l = 0; l < 3; ++l)
            worst = std::max({worst, std::abs(traj.zeta_a[l][i] - ref.zeta_a[l]),
                              std::abs(traj.zeta_b[l][i] - ref.zeta_b[l])});
    }
    REQUIRE(worst < 1e-3);
}

TEST_CASE("exchange symmetry of identical atoms") {
    const auto p = fig_params(0.6, 3);
    const auto bath = build_bath(p, 300, 10.0, false);

    AmplitudeState s;
    s.zeta0 = 0.0;
    s.zeta_a = {cdouble(0.4, 0.1), cdouble(0.4, 0.1), cdouble(0.2, 0.0)};
    s.zeta_b = {cdouble(0.1, -0.2), cdouble(0.1, -0.2), cdouble(0.0, 0.3)};
    const auto traj = simulate(p, bath, s, 3.0, 0.01);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        REQUIRE(traj.zeta_a[0][i] == traj.zeta_a[1][i]);
        REQUIRE(traj.zeta_b[0][i] == traj.zeta_b[1][i]);
    }

    // permuting the initial atoms permutes the trajectories
    AmplitudeState swapped = s;
    std::swap(swapped.zeta_a[0], swapped.zeta_a[2]);
    std::swap(swapped.zeta_b[0], swapped.zeta_b[2]);
    const auto traj2 = simulate(p, bath, swapped, 3.0, 0.01);
    for (std::size_t i = 0; i < traj.times.size(); i += 32) {
        REQUIRE(std::abs(traj2.zeta_a[2][i] - traj.zeta_a[0][i]) < 1e-14);
        REQUIRE(std::abs(traj2.zeta_a[0][i] - traj.zeta_a[2][i]) < 1e-14);
    }
}

TEST_CASE("integrator convergence") {
    const auto p = fig_params(0.5, 1);
    const auto bath = build_bath(p, 400, 10.0, false);
    const auto init = atom1_state(1, 1.0, 0.0);

    const auto coarse = simulate(p, bath, init, 5.0, 0.01);
    const auto fine = simulate(p, bath, init, 5.0, 0.005);
    double dt_change = 0.0;
    for (std::size_t i = 0; i < coarse.times.size(); ++i) {
        // fine grid holds the same instants at doubled index
        dt_change = std::max(dt_change, std::abs(coarse.zeta_a[0][i] - fine.zeta_a[0][2 * i]));
    }
    REQUIRE(dt_change < 1e-6);

    const auto denser = build_bath(p, 800, 10.0, false);
    const auto traj2 = simulate(p, denser, init, 5.0, 0.01);
    double m_change = 0.0;
    for (std::size_t i = 0; i < coarse.times.size(); ++i)
        m_change = std::max(m_change, std::abs(coarse.zeta_a[0][i] - traj2.zeta_a[0][i]));
    REQUIRE(m_change < 1e-3);
}

TEST_CASE("cutoff-induced population trapping") {
    // strong collective coupling, no interference: the no-cutoff dynamics
    // decay to the dark-state floor 0.9, while the clipped band holds a deep
    // bound state that traps extra population
    const auto p = fig_params(0.0, 10);
    const double w = 40.0 * p.lambda;
    const double dt = 0.1 / w;
    const auto init = atom1_state(10, 1.0, 0.0);

    const auto open = simulate(p, build_bath(p, 1500, w, false), init, 20.0, dt);
    const auto clipped = simulate(p, build_bath(p, 1500, w, true), init, 20.0, dt);

    const auto min_late_population = [](const OracleTrajectory& traj) {
        double lo = 1e9;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            if (traj.times[i] < 15.0) continue;
            double pop = 0.0;
            for (std::size_t l = 0; l < traj.zeta_a.size(); ++l)
                pop += std::norm(traj.zeta_a[l][i]) + std::norm(traj.zeta_b[l][i]);
            lo = std::min(lo, pop);
        }
        return lo;
    };
    const double open_floor = min_late_population(open);
    const double clipped_floor = min_late_population(clipped);
    REQUIRE(clipped_floor > open_floor + 0.01);
}

TEST_CASE("simulation guard rails") {
    const auto p = fig_params(0.5, 1);
    const auto bath = build_bath(p, 64, 8.0, false);
    const auto init = atom1_state(1, 1.0, 0.0);

    SECTION("dt precondition") {
        REQUIRE_THROWS_AS(simulate(p, bath, init, 1.0, 0.5), std::invalid_argument);
        REQUIRE_THROWS_AS(simulate(p, bath, init, 0.0, 0.01), std::invalid_argument);
    }

    SECTION("norm drift beyond 1e-6 aborts with a diagnostic") {
        // legal dt for the band, but the collective coupling is cranked far
        // past what that step resolves
        auto hot = p;
        hot.gamma0 = 400.0;
        hot.n_atoms = 4;
        hot.theta = 1.0;
        const auto hot_bath = build_bath(hot, 64, 8.0, false);
        const auto hot_init = atom1_state(4, 1.0, 0.0);
        REQUIRE_THROWS_AS(simulate(hot, hot_bath, hot_init, 2.0, 0.0125), numerical_error);
    }
}
