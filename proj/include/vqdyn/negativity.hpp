#pragma once

#include <array>
#include <cstddef>

#include "vqdyn/hermitian_eigen.hpp"
#include "vqdyn/matrix.hpp"

namespace vqdyn {

enum class Subsystem { first = 1, second = 2 };

/// Transpose one tensor factor of a 9x9 two-qutrit matrix: for the first
/// subsystem, entry ((i,a),(j,b)) moves to ((j,a),(i,b)).
inline Mat9 partial_transpose(const Mat9& rho, Subsystem which) {
    Mat9 out;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t b = 0; b < 3; ++b) {
                    if (which == Subsystem::first)
                        out(3 * j + a, 3 * i + b) = rho(3 * i + a, 3 * j + b);
                    else
                        out(3 * i + b, 3 * j + a) = rho(3 * i + a, 3 * j + b);
                }
    return out;
}

/// Eigenvalues of a 9x9 Hermitian matrix, ascending.
struct Spectrum {
    std::array<double, 9> eigenvalues;
};

inline Spectrum hermitian_eigenvalues(const Mat9& m) {
    return {hermitian_eigensystem(m).values};
}

/// Negativity of a two-qutrit state: the absolute sum of the negative
/// eigenvalues of the partial transpose, equal to (||rho^T1||_1 - 1)/2 for
/// unit-trace input. The maximally entangled qutrit pair scores 1; separable
/// states score 0. Non-negative by construction.
inline double negativity(const Mat9& rho, Subsystem which = Subsystem::first) {
    const auto spec = hermitian_eigenvalues(partial_transpose(rho, which));
    double neg = 0.0;
    for (double ev : spec.eigenvalues)
        if (ev < 0.0) neg -= ev;
    return neg;
}

}  // namespace vqdyn
