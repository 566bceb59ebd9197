#pragma once

// Third-order real IIR transfer functions in powers of z^-1, with a monic
// denominator: H(z) = (n0 + n1/z + n2/z^2 + n3/z^3) / (1 + d1/z + d2/z^2 + d3/z^3).

#include <array>
#include <cmath>
#include <complex>

#include "hyperfilt/cx.hpp"

namespace hyperfilt {

struct RealTransfer3 {
    /// Numerator coefficients of z^0..z^-3.
    std::array<double, 4> num{};
    /// Denominator coefficients of z^-1..z^-3; the z^0 coefficient is 1.
    std::array<double, 3> den{};

    /// All poles strictly inside the unit circle (Jury test on
    /// z^3 + d1 z^2 + d2 z + d3).
    bool is_stable() const {
        const double a2 = den[0], a1 = den[1], a0 = den[2];
        const double p1 = 1.0 + a2 + a1 + a0;   // P(1)
        const double pm1 = -1.0 + a2 - a1 + a0; // P(-1)
        return p1 > 0.0 && pm1 < 0.0 && std::fabs(a0) < 1.0 &&
               std::fabs(a0 * a0 - 1.0) > std::fabs(a0 * a2 - a1);
    }
};

namespace detail {

/// Rational evaluation at w = z^-1 over a generic scalar/point pairing.
template <class S>
Cx<S> eval_rational_w(const std::array<S, 4>& num, const std::array<S, 3>& den,
                      const Cx<S>& w) {
    Cx<S> n{};
    for (std::size_t i = 4; i-- > 0;) n = n * w + Cx<S>(num[i]);
    Cx<S> d{};
    for (std::size_t i = 3; i-- > 0;) d = d * w + Cx<S>(den[i]);
    d = d * w + Cx<S>(S(1.0));
    return n / d;
}

}  // namespace detail

inline std::complex<double> evaluate(const RealTransfer3& f, std::complex<double> z) {
    const Cx<double> w = from_std(1.0 / z);
    return to_std(detail::eval_rational_w(f.num, f.den, w));
}

}  // namespace hyperfilt
