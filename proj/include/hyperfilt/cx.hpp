#pragma once

// Complex arithmetic over a generic real scalar. std::complex is only
// specified for the builtin floating types, so evaluation with dual-number
// scalars needs this small stand-in.

#include <cmath>
#include <complex>

#include "hyperfilt/dual.hpp"

namespace hyperfilt {

template <class T>
struct Cx {
    T re{};
    T im{};

    constexpr Cx() = default;
    constexpr Cx(T r) : re(std::move(r)) {}  // NOLINT: implicit lift of real values
    constexpr Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    constexpr Cx operator-() const { return {-re, -im}; }

    constexpr Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    constexpr Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    constexpr Cx& operator*=(const Cx& o) {
        const T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    constexpr Cx& operator/=(const Cx& o) {
        const T d = o.re * o.re + o.im * o.im;
        const T r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
};

template <class T>
constexpr Cx<T> operator+(Cx<T> a, const Cx<T>& b) { return a += b; }
template <class T>
constexpr Cx<T> operator-(Cx<T> a, const Cx<T>& b) { return a -= b; }
template <class T>
constexpr Cx<T> operator*(Cx<T> a, const Cx<T>& b) { return a *= b; }
template <class T>
constexpr Cx<T> operator/(Cx<T> a, const Cx<T>& b) { return a /= b; }

/// Real scaling without routing through a full complex multiply.
template <class T>
constexpr Cx<T> operator*(double s, Cx<T> z) {
    z.re = z.re * T(s);
    z.im = z.im * T(s);
    return z;
}

/// Modulus, computed through the real and imaginary parts so that a dual
/// scalar propagates d|z| correctly.
template <class T>
inline T abs(const Cx<T>& z) {
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

inline Cx<double> from_std(const std::complex<double>& z) { return {z.real(), z.imag()}; }
inline std::complex<double> to_std(const Cx<double>& z) { return {z.re, z.im}; }

}  // namespace hyperfilt
