#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqdyn/boundstate.hpp"
#include "vqdyn/errors.hpp"
#include "vqdyn/params.hpp"
#include "vqdyn/propagator.hpp"

namespace vqdyn {

/// Norm drift beyond this aborts a simulation with a step-size diagnostic.
inline constexpr double k_bath_drift_abort = 1e-6;

struct DiscretizedBath {
    std::vector<double> mode_freqs;
    /// two-component (polarization) coupling vectors per mode
    std::vector<std::array<double, 2>> couplings_a;
    std::vector<std::array<double, 2>> couplings_b;
    double band_lo = 0.0;
    double band_hi = 0.0;

    std::size_t mode_count() const { return mode_freqs.size(); }

    /// largest detuning from omega0 within the band
    double edge_detuning(double omega0) const {
        return std::max(std::abs(band_lo - omega0), std::abs(band_hi - omega0));
    }
};

/// Uniform midpoint sampling of [omega0 - W, omega0 + W] (clipped at zero
/// when cutoff_at_zero) with |g_k| = sqrt(J(omega_k) dw). The interference
/// angle is realized by two orthogonal polarization components: atom A
/// couples (|g_k|, 0) and atom B couples (theta |g_k|, sqrt(1-theta^2)|g_k|),
/// so the cross kernel equals theta times the diagonal one exactly.
inline DiscretizedBath build_bath(const SystemParams& p, int mode_count, double half_bandwidth,
                                  bool cutoff_at_zero) {
    p.validate();
    if (mode_count < 2) throw std::invalid_argument("build_bath: mode_count must be >= 2");
    if (!std::isfinite(half_bandwidth) || half_bandwidth <= 0.0)
        throw std::invalid_argument("build_bath: half_bandwidth must be > 0");

    DiscretizedBath bath;
    bath.band_lo = p.omega0 - half_bandwidth;
    bath.band_hi = p.omega0 + half_bandwidth;
    if (cutoff_at_zero) bath.band_lo = std::max(bath.band_lo, 0.0);
    if (!(bath.band_lo < bath.band_hi))
        throw std::invalid_argument("build_bath: empty band after cutoff");

    const std::size_t m = static_cast<std::size_t>(mode_count);
    const double dw = (bath.band_hi - bath.band_lo) / static_cast<double>(m);
    const double ortho = std::sqrt(std::max(0.0, 1.0 - p.theta * p.theta));

    bath.mode_freqs.resize(m);
    bath.couplings_a.resize(m);
    bath.couplings_b.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double w = bath.band_lo + (static_cast<double>(k) + 0.5) * dw;
        const double g = std::sqrt(spectral_density(p, w) * dw);
        bath.mode_freqs[k] = w;
        bath.couplings_a[k] = {g, 0.0};
        bath.couplings_b[k] = {p.theta * g, ortho * g};
    }
    return bath;
}

struct OracleTrajectory {
    std::vector<double> times;
    /// zeta_a[atom][step] and zeta_b[atom][step]
    std::vector<std::vector<cdouble>> zeta_a;
    std::vector<std::vector<cdouble>> zeta_b;
    /// final mode amplitudes, two polarizations per mode, mode-major
    std::vector<cdouble> mode_amps;
    double norm_drift = 0.0;
};

namespace detail {

struct BathState {
    std::vector<cdouble> za, zb;  // per atom
    std::vector<cdouble> nu;      // 2 per mode

    void axpy(double a, const BathState& x) {
        for (std::size_t i = 0; i < za.size(); ++i) za[i] += a * x.za[i];
        for (std::size_t i = 0; i < zb.size(); ++i) zb[i] += a * x.zb[i];
        for (std::size_t i = 0; i < nu.size(); ++i) nu[i] += a * x.nu[i];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& z : za) s += std::norm(z);
        for (const auto& z : zb) s += std::norm(z);
        for (const auto& z : nu) s += std::norm(z);
        return s;
    }
};

}  // namespace detail

/// Fixed-step RK4 integration of the interaction-picture single-excitation
/// Schroedinger equations over N atoms plus 2M mode amplitudes:
///   dza/dt = -i sum_k sum_p gA[k][p] e^{+i(omega0-w_k)t} nu[k][p]   (same for
///   every atom; dzb likewise with gB), and
///   dnu[k][p]/dt = -i e^{-i(omega0-w_k)t} (gA[k][p] SA + gB[k][p] SB)
/// with SA, SB the summed atomic amplitudes. dt must satisfy
/// dt <= 0.1 / max(edge detuning, lambda); drift of the conserved norm past
/// k_bath_drift_abort aborts with a step-size diagnostic.
inline OracleTrajectory simulate(const SystemParams& p, const DiscretizedBath& bath,
                                 const AmplitudeState& initial, double t_end, double dt) {
    p.validate();
    initial.validate();
    if (initial.zeta_a.size() != static_cast<std::size_t>(p.n_atoms))
        throw std::invalid_argument("simulate: state size does not match n_atoms");
    if (!std::isfinite(t_end) || t_end <= 0.0)
        throw std::invalid_argument("simulate: t_end must be > 0");
    const double dt_max = 0.1 / std::max(bath.edge_detuning(p.omega0), p.lambda);
    if (!std::isfinite(dt) || dt <= 0.0 || dt > dt_max * (1.0 + 1e-12))
        throw std::invalid_argument("simulate: dt must lie in (0, 0.1/max(band edge, lambda)]");

    const std::size_t n = initial.zeta_a.size();
    const std::size_t m = bath.mode_count();
    std::vector<double> delta(m);
    for (std::size_t k = 0; k < m; ++k) delta[k] = p.omega0 - bath.mode_freqs[k];

    detail::BathState y{initial.zeta_a, initial.zeta_b, std::vector<cdouble>(2 * m, cdouble{})};

    const auto deriv = [&](double t, const detail::BathState& s, detail::BathState& ds) {
        cdouble acc_a{}, acc_b{};
        cdouble sum_a{}, sum_b{};
        for (std::size_t l = 0; l < n; ++l) {
            sum_a += s.za[l];
            sum_b += s.zb[l];
        }
        for (std::size_t k = 0; k < m; ++k) {
            const double ang = delta[k] * t;
            const cdouble ph(std::cos(ang), std::sin(ang));
            const auto& ga = bath.couplings_a[k];
            const auto& gb = bath.couplings_b[k];
            const cdouble nu0 = s.nu[2 * k], nu1 = s.nu[2 * k + 1];
            acc_a += ph * (ga[0] * nu0 + ga[1] * nu1);
            acc_b += ph * (gb[0] * nu0 + gb[1] * nu1);
            const cdouble drive = std::conj(ph) * cdouble(0.0, -1.0);
            ds.nu[2 * k] = drive * (ga[0] * sum_a + gb[0] * sum_b);
            ds.nu[2 * k + 1] = drive * (ga[1] * sum_a + gb[1] * sum_b);
        }
        const cdouble da = cdouble(0.0, -1.0) * acc_a;
        const cdouble db = cdouble(0.0, -1.0) * acc_b;
        for (std::size_t l = 0; l < n; ++l) {
            ds.za[l] = da;
            ds.zb[l] = db;
        }
    };

    const std::size_t steps = static_cast<std::size_t>(std::llround(t_end / dt));
    OracleTrajectory traj;
    traj.times.reserve(steps + 1);
    traj.zeta_a.assign(n, {});
    traj.zeta_b.assign(n, {});
    for (std::size_t l = 0; l < n; ++l) {
        traj.zeta_a[l].reserve(steps + 1);
        traj.zeta_b[l].reserve(steps + 1);
    }
    const auto record = [&](double t) {
        traj.times.push_back(t);
        for (std::size_t l = 0; l < n; ++l) {
            traj.zeta_a[l].push_back(y.za[l]);
            traj.zeta_b[l].push_back(y.zb[l]);
        }
    };
    record(0.0);

    const double norm0 = std::norm(initial.zeta0) + y.norm_sq();
    detail::BathState k1 = y, k2 = y, k3 = y, k4 = y, tmp = y;

    double t = 0.0;
    for (std::size_t step = 0; step < steps; ++step) {
        deriv(t, y, k1);
        tmp = y;
        tmp.axpy(0.5 * dt, k1);
        deriv(t + 0.5 * dt, tmp, k2);
        tmp = y;
        tmp.axpy(0.5 * dt, k2);
        deriv(t + 0.5 * dt, tmp, k3);
        tmp = y;
        tmp.axpy(dt, k3);
        deriv(t + dt, tmp, k4);

        y.axpy(dt / 6.0, k1);
        y.axpy(dt / 3.0, k2);
        y.axpy(dt / 3.0, k3);
        y.axpy(dt / 6.0, k4);
        t = static_cast<double>(step + 1) * dt;
        record(t);

        const double drift = std::abs(std::norm(initial.zeta0) + y.norm_sq() - norm0);
        traj.norm_drift = std::max(traj.norm_drift, drift);
        if (drift > k_bath_drift_abort)
            throw numerical_error(
                "simulate: norm drift " + std::to_string(drift) +
                " exceeds 1e-6 at t = " + std::to_string(t) +
                "; reduce dt (the dynamics outrun the step size)");
    }

    traj.mode_amps = std::move(y.nu);
    return traj;
}

}  // namespace vqdyn
