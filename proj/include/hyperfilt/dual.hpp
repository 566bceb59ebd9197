#pragma once

// Forward-mode dual numbers carrying a single derivative channel:
// f(a + b*eps) = f(a) + b*f'(a)*eps with eps^2 = 0.

#include <cmath>

namespace hyperfilt {

struct Dual {
    double val = 0.0;
    double der = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v) : val(v) {}  // NOLINT: implicit lift of constants
    constexpr Dual(double v, double d) : val(v), der(d) {}

    /// The independent variable of a derivative pass.
    static constexpr Dual seed(double v) { return {v, 1.0}; }

    constexpr Dual operator-() const { return {-val, -der}; }

    constexpr Dual& operator+=(const Dual& r) {
        val += r.val;
        der += r.der;
        return *this;
    }
    constexpr Dual& operator-=(const Dual& r) {
        val -= r.val;
        der -= r.der;
        return *this;
    }
    constexpr Dual& operator*=(const Dual& r) {
        der = der * r.val + val * r.der;
        val *= r.val;
        return *this;
    }
    constexpr Dual& operator/=(const Dual& r) {
        val /= r.val;
        der = (der - val * r.der) / r.val;
        return *this;
    }
};

constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }

inline Dual sqrt(const Dual& x) {
    const double s = std::sqrt(x.val);
    return {s, x.der / (2.0 * s)};
}

/// Derivative is the sign of the value; undefined at zero (caller guards).
inline Dual abs(const Dual& x) { return x.val < 0.0 ? -x : x; }

}  // namespace hyperfilt
