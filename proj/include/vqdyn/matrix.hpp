#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace vqdyn {

using cdouble = std::complex<double>;

/// Dense row-major complex matrix with compile-time dimension. Only the small
/// sizes used here (3 and 9) matter, so everything is by value and unrolled by
/// the optimizer.
template <std::size_t Dim>
class CMat {
  public:
    static constexpr std::size_t dim = Dim;

    constexpr cdouble& operator()(std::size_t r, std::size_t c) { return a_[r * Dim + c]; }
    constexpr const cdouble& operator()(std::size_t r, std::size_t c) const {
        return a_[r * Dim + c];
    }

    static constexpr CMat zero() { return CMat{}; }

    static constexpr CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < Dim; ++i) m(i, i) = 1.0;
        return m;
    }

    CMat adjoint() const {
        CMat m;
        for (std::size_t r = 0; r < Dim; ++r)
            for (std::size_t c = 0; c < Dim; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cdouble trace() const {
        cdouble t = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    CMat& operator+=(const CMat& o) {
        for (std::size_t i = 0; i < Dim * Dim; ++i) a_[i] += o.a_[i];
        return *this;
    }

    CMat& operator-=(const CMat& o) {
        for (std::size_t i = 0; i < Dim * Dim; ++i) a_[i] -= o.a_[i];
        return *this;
    }

    CMat& operator*=(const cdouble& z) {
        for (auto& v : a_) v *= z;
        return *this;
    }

  private:
    std::array<cdouble, Dim * Dim> a_{};
};

template <std::size_t D>
CMat<D> operator+(CMat<D> a, const CMat<D>& b) {
    return a += b;
}

template <std::size_t D>
CMat<D> operator-(CMat<D> a, const CMat<D>& b) {
    return a -= b;
}

template <std::size_t D>
CMat<D> operator*(const cdouble& z, CMat<D> m) {
    return m *= z;
}

template <std::size_t D>
CMat<D> operator*(CMat<D> m, const cdouble& z) {
    return m *= z;
}

template <std::size_t D>
CMat<D> operator*(const CMat<D>& a, const CMat<D>& b) {
    CMat<D> out;
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t k = 0; k < D; ++k) {
            const cdouble ark = a(r, k);
            if (ark == cdouble{}) continue;
            for (std::size_t c = 0; c < D; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

template <std::size_t D>
std::array<cdouble, D> operator*(const CMat<D>& m, const std::array<cdouble, D>& v) {
    std::array<cdouble, D> out{};
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t c = 0; c < D; ++c) out[r] += m(r, c) * v[c];
    return out;
}

template <std::size_t A, std::size_t B>
CMat<A * B> kron(const CMat<A>& x, const CMat<B>& y) {
    CMat<A * B> out;
    for (std::size_t i = 0; i < A; ++i)
        for (std::size_t j = 0; j < A; ++j) {
            const cdouble xij = x(i, j);
            if (xij == cdouble{}) continue;
            for (std::size_t a = 0; a < B; ++a)
                for (std::size_t b = 0; b < B; ++b)
                    out(i * B + a, j * B + b) = xij * y(a, b);
        }
    return out;
}

/// |v><v| projector.
template <std::size_t D>
CMat<D> outer(const std::array<cdouble, D>& v) {
    CMat<D> out;
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t c = 0; c < D; ++c) out(r, c) = v[r] * std::conj(v[c]);
    return out;
}

template <std::size_t D>
double hermiticity_deviation(const CMat<D>& m) {
    double dev = 0.0;
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t c = r; c < D; ++c)
            dev = std::max(dev, std::abs(m(r, c) - std::conj(m(c, r))));
    return dev;
}

template <std::size_t D>
CMat<D> hermitize(const CMat<D>& m) {
    CMat<D> out;
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t c = 0; c < D; ++c)
            out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    return out;
}

using Mat3 = CMat<3>;
using Mat9 = CMat<9>;

}  // namespace vqdyn
