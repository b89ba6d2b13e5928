#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vqdyn/hermitian_eigen.hpp"
#include "vqdyn/matrix.hpp"

namespace vqdyn {

/// Magnitude overshoot tolerated on |g1 +- g2| before kraus_set treats the
/// input as an upstream bug rather than floating-point dust.
inline constexpr double k_kraus_magnitude_tol = 1e-12;

/// The three Kraus operators of the single-qutrit dissipative channel, in the
/// basis order (|A>, |B>, |C>).
struct KrausSet {
    Mat3 k1, k2, k3;
};

/// Build the channel from the transfer amplitudes (g1, g2):
///   K1 = [[g1, g2, 0], [g2, g1, 0], [0, 0, 1]]
///   K2 = sqrt((1 - |g1-g2|^2)/2) * rows-to-|C> with signs (1, -1)
///   K3 = sqrt((1 - |g1+g2|^2)/2) * rows-to-|C> with signs (1, 1)
/// Radicands within k_kraus_magnitude_tol of 0 are clamped so t=0 roundoff
/// cannot produce imaginary prefactors; larger |g1 +- g2| overshoot rejects.
inline KrausSet kraus_set(cdouble g1, cdouble g2) {
    const double md = std::abs(g1 - g2);
    const double ms = std::abs(g1 + g2);
    if (md > 1.0 + k_kraus_magnitude_tol || ms > 1.0 + k_kraus_magnitude_tol)
        throw std::invalid_argument("kraus_set: |g1 +- g2| exceeds 1 beyond tolerance");

    const double r2 = std::max(0.0, 0.5 * (1.0 - md * md));
    const double r3 = std::max(0.0, 0.5 * (1.0 - ms * ms));
    const double c2 = std::sqrt(r2);
    const double c3 = std::sqrt(r3);

    KrausSet ks;
    ks.k1(0, 0) = g1;
    ks.k1(0, 1) = g2;
    ks.k1(1, 0) = g2;
    ks.k1(1, 1) = g1;
    ks.k1(2, 2) = 1.0;
    ks.k2(2, 0) = c2;
    ks.k2(2, 1) = -c2;
    ks.k3(2, 0) = c3;
    ks.k3(2, 1) = c3;
    return ks;
}

/// Max-abs deviation of sum_i Ki† Ki from the identity.
inline double completeness_deviation(const KrausSet& ks) {
    const Mat3 s = ks.k1.adjoint() * ks.k1 + ks.k2.adjoint() * ks.k2 + ks.k3.adjoint() * ks.k3;
    return (s - Mat3::identity()).max_abs();
}

/// rho -> sum_i Ki rho Ki† on one qutrit.
inline Mat3 apply_single(const Mat3& rho, const KrausSet& ks) {
    Mat3 out;
    for (const Mat3* k : {&ks.k1, &ks.k2, &ks.k3}) out += (*k) * rho * k->adjoint();
    return out;
}

/// rho -> sum_{k,l} (Kk ⊗ Kl) rho (Kk ⊗ Kl)† on two qutrits in identical
/// independent reservoirs (one KrausSet for both sides).
inline Mat9 apply_two(const Mat9& rho, const KrausSet& ks) {
    Mat9 out;
    for (const Mat3* ka : {&ks.k1, &ks.k2, &ks.k3})
        for (const Mat3* kb : {&ks.k1, &ks.k2, &ks.k3}) {
            const Mat9 k = kron(*ka, *kb);
            out += k * rho * k.adjoint();
        }
    return out;
}

/// Single-qutrit density matrix of a pure single-excitation state with upper
/// amplitudes (zeta_a, zeta_b) and surviving ground amplitude zeta0; the
/// ground population 1 - |zeta_a|^2 - |zeta_b|^2 also absorbs whatever part of
/// the excitation has leaked into the reservoir.
inline Mat3 density_from_amplitudes(cdouble zeta_a, cdouble zeta_b, cdouble zeta0) {
    const double pa = std::norm(zeta_a);
    const double pb = std::norm(zeta_b);
    const double p0 = std::norm(zeta0);
    if (pa + pb > 1.0 + 1e-10)
        throw std::invalid_argument("density_from_amplitudes: |zeta_a|^2 + |zeta_b|^2 > 1");
    if (p0 > 1.0 - pa - pb + 1e-10)
        throw std::invalid_argument("density_from_amplitudes: |zeta0|^2 exceeds the ground population");

    Mat3 rho;
    rho(0, 0) = pa;
    rho(0, 1) = zeta_a * std::conj(zeta_b);
    rho(0, 2) = zeta_a * std::conj(zeta0);
    rho(1, 0) = zeta_b * std::conj(zeta_a);
    rho(1, 1) = pb;
    rho(1, 2) = zeta_b * std::conj(zeta0);
    rho(2, 0) = zeta0 * std::conj(zeta_a);
    rho(2, 1) = zeta0 * std::conj(zeta_b);
    rho(2, 2) = 1.0 - pa - pb;
    return rho;
}

template <std::size_t D>
struct DensityDiagnostics {
    double hermiticity;  ///< max |m - m†| entry
    double trace_dev;    ///< |tr(m) - 1|
    double min_eigenvalue;
};

template <std::size_t D>
DensityDiagnostics<D> diagnose_density(const CMat<D>& m) {
    DensityDiagnostics<D> d;
    d.hermiticity = hermiticity_deviation(m);
    d.trace_dev = std::abs(m.trace() - cdouble(1.0));
    const auto es = hermitian_eigensystem(hermitize(m));
    d.min_eigenvalue = es.values.front();
    return d;
}

/// Hermitian to 1e-12, unit trace to 1e-10, eigenvalues above -1e-9.
template <std::size_t D>
bool is_physical_density(const CMat<D>& m) {
    const auto d = diagnose_density(m);
    return d.hermiticity <= 1e-12 && d.trace_dev <= 1e-10 && d.min_eigenvalue >= -1e-9;
}

}  // namespace vqdyn
