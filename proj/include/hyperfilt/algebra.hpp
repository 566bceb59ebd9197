#pragma once

// =============================================================================
// Table-driven arithmetic for finite-dimensional commutative hypercomplex
// number systems.
//
// An AlgebraTable holds the structure constants gamma[i][j][k] of
// e_i * e_j = sum_k gamma[i][j][k] e_k with e_0 the two-sided identity.
// Elements are coefficient vectors over a generic scalar ring (double,
// complex, dual number, polynomial), so the same multiplication code serves
// plain arithmetic, frequency-domain evaluation, derivative passes and
// symbolic-in-w expansion.
//
// Norm and conjugate come from the regular representation L_x ("multiply by
// x" as a dim x dim matrix): norm(x) = det(L_x) and conjugate(x) =
// adjugate(L_x) applied to the identity, which gives x * conj(x) =
// norm(x) * identity exactly and realizes division by rationalization.
// =============================================================================

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperfilt/cx.hpp"
#include "hyperfilt/dual.hpp"
#include "hyperfilt/errors.hpp"

namespace hyperfilt {

// ------------------------------------------------------------------ scalars

inline double scalar_mag(double x) { return std::fabs(x); }
inline double scalar_mag(const Dual& x) { return std::fabs(x.val); }
inline double scalar_mag(const Cx<double>& z) { return std::hypot(z.re, z.im); }
inline double scalar_mag(const Cx<Dual>& z) { return std::hypot(z.re.val, z.im.val); }

// ---------------------------------------------------------------- small mat

/// Dense square matrix of runtime dimension over a generic ring scalar.
template <class S>
class Mat {
public:
    Mat() = default;
    explicit Mat(std::size_t n) : n_(n), a_(n * n) {}

    std::size_t dim() const { return n_; }
    S& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const S& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::vector<S> col(std::size_t j) const {
        std::vector<S> c(n_);
        for (std::size_t i = 0; i < n_; ++i) c[i] = at(i, j);
        return c;
    }

    S trace() const {
        S t{};
        for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<S> a_;
};

namespace detail {

/// Minor with row i and column j removed.
template <class S>
Mat<S> submatrix(const Mat<S>& m, std::size_t i, std::size_t j) {
    Mat<S> s(m.dim() - 1);
    for (std::size_t r = 0, sr = 0; r < m.dim(); ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, sc = 0; c < m.dim(); ++c) {
            if (c == j) continue;
            s.at(sr, sc) = m.at(r, c);
            ++sc;
        }
        ++sr;
    }
    return s;
}

}  // namespace detail

/// Division-free determinant by cofactor expansion. Intended for the small
/// dimensions of hypercomplex tables; works over any commutative ring scalar
/// (in particular polynomials, where elimination would need division).
template <class S>
S det(const Mat<S>& m) {
    const std::size_t n = m.dim();
    if (n == 0) return S(1.0);
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    S acc{};
    for (std::size_t j = 0; j < n; ++j) {
        S term = m.at(0, j) * det(detail::submatrix(m, 0, j));
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

/// Adjugate (transposed cofactor matrix): m * adjugate(m) = det(m) * I.
template <class S>
Mat<S> adjugate(const Mat<S>& m) {
    const std::size_t n = m.dim();
    Mat<S> a(n);
    if (n == 1) {
        a.at(0, 0) = S(1.0);
        return a;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            S cof = det(detail::submatrix(m, i, j));
            a.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return a;
}

/// Gaussian elimination with partial pivoting; returns x with a x = b.
/// Throws SingularSystem carrying the pivot-ratio condition estimate.
inline std::vector<double> solve_dense(Mat<double> a, std::vector<double> b) {
    const std::size_t n = a.dim();
    if (b.size() != n) throw std::invalid_argument("solve_dense: size mismatch");
    double max_pivot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a.at(i, k)) > std::fabs(a.at(p, k))) p = i;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            std::swap(b[k], b[p]);
        }
        const double piv = std::fabs(a.at(k, k));
        max_pivot = std::max(max_pivot, piv);
        if (piv <= 1e-13 * std::max(1.0, max_pivot))
            throw SingularSystem(max_pivot / std::max(piv, 1e-300));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a.at(i, k) / a.at(k, k);
            for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    return x;
}

// ------------------------------------------------------------ AlgebraTable

/// Structure constants of a commutative associative algebra with identity.
/// gamma(i, j, k) is the coefficient of e_k in e_i * e_j, zero-based, with
/// e_0 the identity. Construction validates all three type invariants.
class AlgebraTable {
public:
    AlgebraTable(std::string name, std::size_t dim, std::vector<double> gamma)
        : name_(std::move(name)), dim_(dim), gamma_(std::move(gamma)) {
        if (dim_ == 0 || gamma_.size() != dim_ * dim_ * dim_)
            throw std::invalid_argument("AlgebraTable: gamma must hold dim^3 constants");
        validate();
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }

    double gamma(std::size_t i, std::size_t j, std::size_t k) const {
        return gamma_[(i * dim_ + j) * dim_ + k];
    }

    /// Raw count of nonzero structure constants outside the identity row and
    /// column. Reported as-is; no position is taken on counting conventions.
    std::size_t nonzero_off_identity() const {
        std::size_t n = 0;
        for (std::size_t i = 1; i < dim_; ++i)
            for (std::size_t j = 1; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (gamma(i, j, k) != 0.0) ++n;
        return n;
    }

    /// Worst associativity residual over all basis triples (zero for valid
    /// tables; exposed so reports can print the verified bound).
    double associativity_residual() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    for (std::size_t m = 0; m < dim_; ++m) {
                        // ((e_i e_j) e_k)_m vs (e_i (e_j e_k))_m
                        double left = 0.0, right = 0.0;
                        for (std::size_t t = 0; t < dim_; ++t) {
                            left += gamma(i, j, t) * gamma(t, k, m);
                            right += gamma(j, k, t) * gamma(i, t, m);
                        }
                        worst = std::max(worst, std::fabs(left - right));
                    }
        return worst;
    }

    bool operator==(const AlgebraTable& o) const {
        return this == &o || (dim_ == o.dim_ && gamma_ == o.gamma_);
    }

private:
    void validate() const {
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                const double want = (j == k) ? 1.0 : 0.0;
                if (gamma(0, j, k) != want || gamma(j, 0, k) != want)
                    throw std::invalid_argument("AlgebraTable: e_0 must be the identity");
            }
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (gamma(i, j, k) != gamma(j, i, k))
                        throw std::invalid_argument("AlgebraTable: table must be commutative");
        if (associativity_residual() > 1e-12)
            throw std::invalid_argument("AlgebraTable: table must be associative");
    }

    std::string name_;
    std::size_t dim_;
    std::vector<double> gamma_;
};

namespace detail {

inline std::vector<double> gamma3_constants() {
    // e1*e1 = -e0 + e2, e1*e2 = -2 e1, e2*e2 = 2 e0 - e2 (zero-based basis).
    std::vector<double> g(27, 0.0);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, double v) {
        g[(i * 3 + j) * 3 + k] = v;
        g[(j * 3 + i) * 3 + k] = v;
    };
    for (std::size_t j = 0; j < 3; ++j) set(0, j, j, 1.0);
    set(1, 1, 0, -1.0);
    set(1, 1, 2, 1.0);
    set(1, 2, 1, -2.0);
    set(2, 2, 0, 2.0);
    set(2, 2, 2, -1.0);
    return g;
}

inline std::vector<double> r_plus_c_constants() {
    // Identity-first basis of the direct sum of the reals and the complex
    // numbers: e1*e1 = e1, e1*e2 = e2, e2*e2 = -e1. The complementary
    // idempotent e0 - e1 spans the real summand.
    std::vector<double> g(27, 0.0);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, double v) {
        g[(i * 3 + j) * 3 + k] = v;
        g[(j * 3 + i) * 3 + k] = v;
    };
    for (std::size_t j = 0; j < 3; ++j) set(0, j, j, 1.0);
    set(1, 1, 1, 1.0);
    set(1, 2, 2, 1.0);
    set(2, 2, 1, -1.0);
    return g;
}

}  // namespace detail

/// The non-canonical dimension-3 system used for filter synthesis.
inline const AlgebraTable& gamma3() {
    static const AlgebraTable t("GAMMA3", 3, detail::gamma3_constants());
    return t;
}

/// Direct sum of the reals and the complex numbers; isomorphic to gamma3().
inline const AlgebraTable& r_plus_c() {
    static const AlgebraTable t("RC", 3, detail::r_plus_c_constants());
    return t;
}

// -------------------------------------------------------------- HnsElement

/// An element of a table-defined algebra: a coefficient vector over a
/// generic scalar ring. Immutable in practice; all operations return new
/// values, so concurrent use needs no synchronization.
template <class S>
class HnsElement {
public:
    explicit HnsElement(const AlgebraTable& table)
        : table_(&table), coeffs_(table.dim(), S{}) {}

    HnsElement(const AlgebraTable& table, std::vector<S> coeffs)
        : table_(&table), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != table.dim())
            throw std::invalid_argument("HnsElement: coefficient count must equal table dim");
    }

    static HnsElement basis(const AlgebraTable& table, std::size_t k) {
        HnsElement e(table);
        e.coeffs_.at(k) = S(1.0);
        return e;
    }

    /// The identity element e_0.
    static HnsElement unit(const AlgebraTable& table) { return basis(table, 0); }

    const AlgebraTable& table() const { return *table_; }
    std::size_t dim() const { return coeffs_.size(); }
    const std::vector<S>& coeffs() const { return coeffs_; }
    const S& operator[](std::size_t k) const { return coeffs_[k]; }
    S& operator[](std::size_t k) { return coeffs_[k]; }

    HnsElement operator-() const {
        HnsElement r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    HnsElement& operator+=(const HnsElement& o) {
        require_same_table(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    HnsElement& operator-=(const HnsElement& o) {
        require_same_table(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    HnsElement& operator*=(const S& s) {
        for (auto& c : coeffs_) c = c * s;
        return *this;
    }

    friend HnsElement operator+(HnsElement a, const HnsElement& b) { return a += b; }
    friend HnsElement operator-(HnsElement a, const HnsElement& b) { return a -= b; }
    friend HnsElement operator*(HnsElement a, const S& s) { return a *= s; }
    friend HnsElement operator*(const S& s, HnsElement a) { return a *= s; }

    void require_same_table(const HnsElement& o) const {
        if (!(*table_ == *o.table_))
            throw std::invalid_argument("HnsElement: operands belong to different tables");
    }

private:
    const AlgebraTable* table_;
    std::vector<S> coeffs_;
};

/// Bilinear product through the structure constants. Commutative because the
/// table is.
template <class S>
HnsElement<S> mul(const HnsElement<S>& x, const HnsElement<S>& y) {
    x.require_same_table(y);
    const AlgebraTable& t = x.table();
    const std::size_t n = t.dim();
    HnsElement<S> out(t);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const S xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) {
                const double g = t.gamma(i, j, k);
                if (g != 0.0) out[k] += g * xy;
            }
        }
    }
    return out;
}

template <class S>
HnsElement<S> operator*(const HnsElement<S>& x, const HnsElement<S>& y) {
    return mul(x, y);
}

/// Regular representation: column j holds the coefficients of x * e_j.
template <class S>
Mat<S> regular_rep(const HnsElement<S>& x) {
    const AlgebraTable& t = x.table();
    const std::size_t n = t.dim();
    Mat<S> m(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            S acc{};
            for (std::size_t k = 0; k < n; ++k) {
                const double g = t.gamma(k, j, i);
                if (g != 0.0) acc += g * x[k];
            }
            m.at(i, j) = acc;
        }
    }
    return m;
}

/// RepMatrix is the regular representation; named alias for call sites that
/// care about the role rather than the storage.
template <class S>
using RepMatrix = Mat<S>;

/// norm(x) = det(L_x). Multiplicative, and degree-dim homogeneous.
template <class S>
S norm(const HnsElement<S>& x) {
    return det(regular_rep(x));
}

/// conjugate(x) = adjugate(L_x) applied to the identity, i.e. the first
/// column of the adjugate. Satisfies x * conj(x) = norm(x) * e_0.
template <class S>
HnsElement<S> conjugate(const HnsElement<S>& x) {
    const Mat<S> adj = adjugate(regular_rep(x));
    return HnsElement<S>(x.table(), adj.col(0));
}

/// Division by rationalization: inverse(x) = conj(x) / norm(x). The
/// singularity threshold scales with the dim-th power of the element
/// magnitude because the norm is a degree-dim form.
template <class S>
HnsElement<S> inverse(const HnsElement<S>& x) {
    const S n = norm(x);
    double scale = 0.0;
    for (const auto& c : x.coeffs()) scale = std::max(scale, scalar_mag(c));
    double tol = 1e-12;
    for (std::size_t k = 0; k < x.dim(); ++k) tol *= std::max(scale, 1e-30);
    if (scalar_mag(n) <= tol) throw NearZeroNorm(scalar_mag(n));
    HnsElement<S> r = conjugate(x);
    const S inv_n = S(1.0) / n;
    return r *= inv_n;
}

}  // namespace hyperfilt
