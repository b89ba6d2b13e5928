#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "vqdyn/errors.hpp"
#include "vqdyn/matrix.hpp"

namespace vqdyn {

inline constexpr double k_hermiticity_tol = 1e-10;
inline constexpr double k_jacobi_off_tol = 1e-12;
inline constexpr int k_jacobi_max_sweeps = 100;

template <std::size_t D>
struct EigenSystem {
    std::array<double, D> values;  ///< ascending
    CMat<D> vectors;               ///< column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix with two-sided
/// unitary plane rotations. The input is symmetrized to (m + m†)/2 after
/// checking that the deviation stays within k_hermiticity_tol of the matrix
/// scale. Sweeps stop when the off-diagonal Frobenius norm falls below
/// off_tol * ||m||_F; exceeding max_sweeps signals malformed input.
template <std::size_t D>
EigenSystem<D> hermitian_eigensystem(const CMat<D>& m, double off_tol = k_jacobi_off_tol,
                                     int max_sweeps = k_jacobi_max_sweeps) {
    const double scale = m.frobenius_norm();
    if (!std::isfinite(scale))
        throw std::invalid_argument("hermitian_eigensystem: input has non-finite entries");
    if (hermiticity_deviation(m) > k_hermiticity_tol * std::max(scale, 1.0))
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");

    CMat<D> a = hermitize(m);
    CMat<D> v = CMat<D>::identity();

    const auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t r = 0; r < D; ++r)
            for (std::size_t c = 0; c < D; ++c)
                if (r != c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    int sweep = 0;
    const double target = off_tol * std::max(scale, 1e-300);
    while (off_norm() > target) {
        if (++sweep > max_sweeps)
            throw numerical_error("hermitian_eigensystem: no convergence within sweep cap");
        for (std::size_t p = 0; p < D; ++p) {
            for (std::size_t q = p + 1; q < D; ++q) {
                const cdouble g = a(p, q);
                const double absg = std::abs(g);
                if (absg == 0.0) continue;

                const double alpha = std::real(a(p, p));
                const double beta = std::real(a(q, q));
                const double tau = (beta - alpha) / (2.0 * absg);
                const double tt =
                    (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                 : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const cdouble s = (tt * c) * (g / absg);

                // columns: A <- A J with J(p,p)=c, J(p,q)=s, J(q,p)=-conj(s), J(q,q)=c
                for (std::size_t k = 0; k < D; ++k) {
                    const cdouble akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - std::conj(s) * akq;
                    a(k, q) = s * akp + c * akq;
                }
                // rows: A <- J† A
                for (std::size_t k = 0; k < D; ++k) {
                    const cdouble apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = std::conj(s) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < D; ++k) {
                    const cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(s) * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    // the rotations keep the diagonal real up to roundoff; verify before
    // discarding the imaginary parts
    std::array<double, D> values;
    for (std::size_t i = 0; i < D; ++i) {
        if (std::abs(std::imag(a(i, i))) > 1e-10 * std::max(scale, 1.0))
            throw numerical_error("hermitian_eigensystem: diagonal acquired an imaginary part");
        values[i] = std::real(a(i, i));
    }

    std::array<std::size_t, D> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    EigenSystem<D> out;
    out.sweeps = sweep;
    for (std::size_t i = 0; i < D; ++i) {
        out.values[i] = values[order[i]];
        for (std::size_t k = 0; k < D; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

}  // namespace vqdyn
