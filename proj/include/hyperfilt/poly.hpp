#pragma once

// Dense univariate polynomials over a generic commutative ring scalar.
// Coefficients are stored ascending by degree and never trimmed: the ring
// scalar (for example a dual number) need not be comparable with zero.

#include <cstddef>
#include <vector>

namespace hyperfilt {

template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(double v) : c_{T(v)} {}
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) {}
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) {}

    static Poly constant(T value) { return Poly(std::vector<T>{std::move(value)}); }

    std::size_t size() const { return c_.size(); }
    /// Coefficient of x^k, zero beyond the stored range.
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly{};
        Poly r;
        r.c_.resize(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }

    /// Scale by a plain real factor (structure constants are doubles).
    friend Poly operator*(double s, Poly p) {
        for (auto& x : p.c_) x = x * T(s);
        return p;
    }

    /// Horner evaluation at a point of any type closed under *point and +T.
    template <class U>
    U eval(const U& x) const {
        U acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }

private:
    std::vector<T> c_;
};

}  // namespace hyperfilt
