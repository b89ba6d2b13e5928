#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "vqdyn/matrix.hpp"

namespace vqdyn_test {

/// Random unitary from composed complex plane rotations plus diagonal phases;
/// not Haar-exact, but it reaches every pair of axes with random angles,
/// which is all the invariance tests need.
template <std::size_t D>
vqdyn::CMat<D> random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    auto u = vqdyn::CMat<D>::identity();
    for (std::size_t i = 0; i < D; ++i) u(i, i) = std::exp(vqdyn::cdouble(0.0, angle(rng)));
    for (std::size_t p = 0; p < D; ++p)
        for (std::size_t q = p + 1; q < D; ++q) {
            auto r = vqdyn::CMat<D>::identity();
            const double phi = 0.5 * angle(rng);
            const vqdyn::cdouble s = std::sin(phi) * std::exp(vqdyn::cdouble(0.0, angle(rng)));
            r(p, p) = std::cos(phi);
            r(p, q) = s;
            r(q, p) = -std::conj(s);
            r(q, q) = std::cos(phi);
            u = u * r;
        }
    return u;
}

/// Random density matrix as a mixture of a few random pure states.
template <std::size_t D>
vqdyn::CMat<D> random_density(std::mt19937_64& rng, int terms = 4) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    vqdyn::CMat<D> rho;
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
        std::array<vqdyn::cdouble, D> v{};
        double nn = 0.0;
        for (auto& z : v) {
            z = vqdyn::cdouble(gauss(rng), gauss(rng));
            nn += std::norm(z);
        }
        for (auto& z : v) z /= std::sqrt(nn);
        const double w = u01(rng) + 1e-3;
        rho += w * vqdyn::outer(v);
        total += w;
    }
    rho *= vqdyn::cdouble(1.0 / total);
    return rho;
}

}  // namespace vqdyn_test
