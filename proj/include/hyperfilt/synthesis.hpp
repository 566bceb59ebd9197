#pragma once

// =============================================================================
// Conversion between third-order real IIR filters and first-order filters
// with coefficients in the gamma3() algebra:
//
//   H(z) = (A + B/z) / (1 + C/z)
//        = (A + B/z) * conj(1 + C/z) / norm(1 + C/z),
//
// whose scalar transfer function is the e_0 component of the rationalized
// numerator over the (scalar) norm polynomial.
//
// The expansion is computed symbolically in w = z^-1 by running the algebra
// operations over polynomial scalars: norm(1 + C w) is the denominator,
// the e_0 component of (A + B w) * conj(1 + C w) the numerator. That
// adjugate route is the authoritative path; hand-transcribed closed forms
// are kept alongside purely as a cross-check (two of their terms are
// transcription-suspect and intentionally flagged, see closed_form_check).
//
// Solving the inverse problem splits into a 3x3 polynomial system for C
// (damped Newton with lattice multistart) and, with (a3, b2) chosen freely,
// a 3x3 linear system for the remaining numerator coefficients.
// =============================================================================

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "hyperfilt/algebra.hpp"
#include "hyperfilt/dual.hpp"
#include "hyperfilt/errors.hpp"
#include "hyperfilt/poly.hpp"
#include "hyperfilt/transfer.hpp"

namespace hyperfilt {

/// Which sign of the second C component to keep; it enters the denominator
/// system only through its square, so both branches are valid.
enum class Branch { negative, positive };

/// First-order filter with gamma3() coefficients plus the record of the two
/// free components (A[2] and B[1]) that were fixed during conversion.
struct HyperFilter1 {
    HnsElement<double> A;
    HnsElement<double> B;
    HnsElement<double> C;
    double free_a3 = 0.0;
    double free_b2 = 0.0;
};

/// Rationalized coefficients of the first-order form: a real rational
/// function with monic denominator, same shape as RealTransfer3. num[0]
/// always equals the e_0 component of A.
template <class S = double>
struct ExpandedForm {
    std::array<S, 4> num{};
    std::array<S, 3> den{};
};

inline RealTransfer3 to_transfer(const ExpandedForm<double>& e) { return {e.num, e.den}; }

// ------------------------------------------------------------------ expand

namespace detail {

/// Lift an element to polynomial scalars: lead + tail * w.
template <class S>
HnsElement<Poly<S>> linear_in_w(const HnsElement<S>& lead, const HnsElement<S>& tail) {
    lead.require_same_table(tail);
    HnsElement<Poly<S>> p(lead.table());
    for (std::size_t k = 0; k < lead.dim(); ++k) p[k] = Poly<S>({lead[k], tail[k]});
    return p;
}

}  // namespace detail

/// Symbolic expansion in w = z^-1 through the adjugate route. Generic over
/// the scalar so the same code yields plain coefficients, dual-number
/// derivative channels, or anything else ring-like.
template <class S>
ExpandedForm<S> expand(const HnsElement<S>& A, const HnsElement<S>& B, const HnsElement<S>& C) {
    A.require_same_table(B);
    A.require_same_table(C);
    const auto one = HnsElement<S>::unit(A.table());

    const auto den_poly = detail::linear_in_w(one, C);       // 1 + C w
    const auto rep = regular_rep(den_poly);                  // entries linear in w
    const Poly<S> den = det(rep);                            // 1 + T w + P w^2 + Q w^3
    const auto conj_cols = adjugate(rep).col(0);             // conj(1 + C w), degree <= 2

    HnsElement<Poly<S>> conj_el(A.table(), conj_cols);
    const auto numer_el = mul(detail::linear_in_w(A, B), conj_el);
    const Poly<S>& numer = numer_el[0];                      // e_0 component, degree <= 3

    ExpandedForm<S> out;
    for (std::size_t i = 0; i < 4; ++i) out.num[i] = numer.coeff(i);
    for (std::size_t i = 0; i < 3; ++i) out.den[i] = den.coeff(i + 1);
    return out;
}

inline ExpandedForm<double> expand(const HyperFilter1& f) { return expand(f.A, f.B, f.C); }

/// Hand-transcribed closed forms for the expanded coefficients. Retained
/// only as a cross-check on the adjugate route: the w^1 numerator term
/// (-a3*c3 here vs -2*a3*c3 from the adjugate) and the w^1 denominator term
/// (3c1 - 3c2 here vs 3c1 - 3c3) do not match it and are considered
/// transcription defects; the adjugate route is validated independently by
/// the round-trip contract.
template <class S>
ExpandedForm<S> expand_closed_form(const HnsElement<S>& A, const HnsElement<S>& B,
                                   const HnsElement<S>& C) {
    const S a1 = A[0], a2 = A[1], a3 = A[2];
    const S b1 = B[0], b2 = B[1], b3 = B[2];
    const S c1 = C[0], c2 = C[1], c3 = C[2];

    ExpandedForm<S> out;
    out.num[0] = a1;
    out.num[1] = a2 * c2 - a3 * c3 - 3.0 * a1 * c3 + 2.0 * a1 * c1 + b1;
    out.num[2] = -2.0 * b3 * c3 + c2 * a2 * c3 + c2 * a2 * c1 - 3.0 * a1 * c1 * c3 + c2 * b2 -
                 2.0 * a3 * c1 * c3 + 4.0 * a3 * c3 * c3 + 2.0 * a1 * c2 * c2 + a1 * c1 * c1 +
                 2.0 * a3 * c2 * c2 - 3.0 * b1 * c3 + 2.0 * a1 * c3 * c3 + 2.0 * b1 * c1;
    out.num[3] = c2 * b2 * c3 + b1 * c1 * c1 - 2.0 * b3 * c1 * c3 + c2 * b2 * c1 +
                 2.0 * b1 * c2 * c2 - 3.0 * b1 * c1 * c3 + 2.0 * b1 * c3 * c3 +
                 2.0 * b3 * c2 * c2 + 4.0 * b3 * c3 * c3;
    out.den[0] = 3.0 * c1 - 3.0 * c2;
    out.den[1] = -6.0 * c1 * c3 + 3.0 * c2 * c2 + 3.0 * c1 * c1;
    out.den[2] = 3.0 * c1 * c2 * c2 + 3.0 * c2 * c2 * c3 + c1 * c1 * c1 - 3.0 * c1 * c1 * c3 +
                 4.0 * c3 * c3 * c3;
    return out;
}

/// Per-coefficient comparison of the adjugate route against the closed
/// forms, with the two documented mismatch monomials evaluated explicitly.
struct ClosedFormCheck {
    ExpandedForm<double> adjugate_route;
    ExpandedForm<double> closed_form;
    /// adjugate num[1] minus closed num[1]; analytically -a3*c3.
    double num1_delta = 0.0;
    /// adjugate den[0] minus closed den[0]; analytically 3*(c2 - c3).
    double den0_delta = 0.0;
    /// Largest disagreement over the coefficients expected to match
    /// (num[0], num[2], num[3], den[1], den[2]).
    double matching_residual = 0.0;
};

inline ClosedFormCheck closed_form_check(const HnsElement<double>& A, const HnsElement<double>& B,
                                         const HnsElement<double>& C) {
    ClosedFormCheck r;
    r.adjugate_route = expand(A, B, C);
    r.closed_form = expand_closed_form(A, B, C);
    r.num1_delta = r.adjugate_route.num[1] - r.closed_form.num[1];
    r.den0_delta = r.adjugate_route.den[0] - r.closed_form.den[0];
    const auto d = [&](double a, double b) { return std::fabs(a - b); };
    r.matching_residual =
        std::max({d(r.adjugate_route.num[0], r.closed_form.num[0]),
                  d(r.adjugate_route.num[2], r.closed_form.num[2]),
                  d(r.adjugate_route.num[3], r.closed_form.num[3]),
                  d(r.adjugate_route.den[1], r.closed_form.den[1]),
                  d(r.adjugate_route.den[2], r.closed_form.den[2])});
    return r;
}

// ------------------------------------------------------- denominator solve

namespace detail {

/// Denominator coefficients (w^1..w^3 of norm(1 + C w)) as a function of
/// the C coefficients, generic so dual scalars produce the Jacobian.
template <class S>
std::array<S, 3> denominator_map(const AlgebraTable& table, const std::array<S, 3>& c) {
    HnsElement<S> cel(table, {c[0], c[1], c[2]});
    const auto p = linear_in_w(HnsElement<S>::unit(table), cel);
    const Poly<S> d = det(regular_rep(p));
    return {d.coeff(1), d.coeff(2), d.coeff(3)};
}

struct NewtonOutcome {
    std::array<double, 3> root{};
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
};

inline double den_residual(const AlgebraTable& table, const std::array<double, 3>& c,
                           const std::array<double, 3>& target) {
    const auto f = denominator_map(table, c);
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, std::fabs(f[i] - target[i]));
    return r;
}

/// Damped Newton on the 3-equation denominator system from one start.
inline NewtonOutcome newton_denominator(const AlgebraTable& table, std::array<double, 3> c,
                                        const std::array<double, 3>& target, int max_iters = 60,
                                        double tol = 1e-12) {
    NewtonOutcome out;
    double r = den_residual(table, c, target);
    for (int it = 0; it < max_iters; ++it) {
        if (r < tol) break;
        Mat<double> jac(3);
        std::vector<double> f(3);
        for (int col = 0; col < 3; ++col) {
            std::array<Dual, 3> cd{Dual(c[0]), Dual(c[1]), Dual(c[2])};
            cd[col].der = 1.0;
            const auto fd = denominator_map(table, cd);
            for (int row = 0; row < 3; ++row) {
                jac.at(row, col) = fd[row].der;
                if (col == 0) f[row] = fd[row].val - target[row];
            }
        }
        std::vector<double> step;
        try {
            step = solve_dense(jac, f);
        } catch (const SingularSystem&) {
            break;
        }
        // Backtracking on the residual; bail out when no damping helps.
        double lambda = 1.0;
        bool moved = false;
        while (lambda > 1e-10) {
            std::array<double, 3> cand{c[0] - lambda * step[0], c[1] - lambda * step[1],
                                       c[2] - lambda * step[2]};
            const double rc = den_residual(table, cand, target);
            if (rc < r) {
                c = cand;
                r = rc;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) break;
    }
    out.root = c;
    out.residual = r;
    out.converged = r < 1e-10;
    return out;
}

}  // namespace detail

/// Solve T(C) = den[0], P(C) = den[1], Q(C) = den[2] for C over gamma3() by
/// damped Newton from a coarse lattice of starts in [-2, 2]^3 (step 0.25),
/// keeping the converged root whose second component matches `branch`.
/// Deterministic: roots are ranked by residual, then by start index.
inline HnsElement<double> solve_denominator(const RealTransfer3& target,
                                            Branch branch = Branch::negative) {
    const AlgebraTable& table = gamma3();
    const std::array<double, 3> goal{target.den[0], target.den[1], target.den[2]};

    detail::NewtonOutcome best;       // best branch-matching root
    double best_any = std::numeric_limits<double>::infinity();  // diagnostics

    const double sign_tol = 1e-9;
    int start_index = 0;
    for (int ia = 0; ia <= 16; ++ia) {
        for (int ib = 0; ib <= 16; ++ib) {
            for (int ic = 0; ic <= 16; ++ic, ++start_index) {
                const std::array<double, 3> start{-2.0 + 0.25 * ia, -2.0 + 0.25 * ib,
                                                  -2.0 + 0.25 * ic};
                const auto res = detail::newton_denominator(table, start, goal);
                best_any = std::min(best_any, res.residual);
                if (!res.converged) continue;
                const double c2 = res.root[1];
                const bool matches = (branch == Branch::negative) ? (c2 <= sign_tol)
                                                                  : (c2 >= -sign_tol);
                if (!matches) continue;
                if (res.residual < best.residual) best = res;
            }
        }
    }
    if (!best.converged) throw NoRealSolution(best_any);
    return HnsElement<double>(table, {best.root[0], best.root[1], best.root[2]});
}

// --------------------------------------------------------- numerator solve

/// With C fixed and (a3, b2) supplied, a1 is pinned to num[0] of the target
/// and the remaining unknowns (a2, b1, b3) solve the linear system matching
/// the w^1..w^3 numerator coefficients. The system is built from the
/// adjugate expansion, not from closed forms, and solved with partial
/// pivoting. Throws SingularSystem when rank-deficient for this C.
inline std::pair<HnsElement<double>, HnsElement<double>> solve_numerator(
    const RealTransfer3& target, const HnsElement<double>& C, double a3, double b2) {
    const AlgebraTable& table = C.table();
    const double a1 = target.num[0];

    const auto tail = [&](double a2, double b1, double b3) {
        HnsElement<double> A(table, {a1, a2, a3});
        HnsElement<double> B(table, {b1, b2, b3});
        const auto e = expand(A, B, C);
        return std::array<double, 3>{e.num[1], e.num[2], e.num[3]};
    };

    const auto base = tail(0.0, 0.0, 0.0);
    Mat<double> sys(3);
    for (int col = 0; col < 3; ++col) {
        const auto probe = tail(col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0, col == 2 ? 1.0 : 0.0);
        for (int row = 0; row < 3; ++row) sys.at(row, col) = probe[row] - base[row];
    }
    std::vector<double> rhs(3);
    for (int row = 0; row < 3; ++row) rhs[row] = target.num[row + 1] - base[row];

    const auto sol = solve_dense(sys, rhs);  // throws SingularSystem
    HnsElement<double> A(table, {a1, sol[0], a3});
    HnsElement<double> B(table, {sol[1], b2, sol[2]});
    return {A, B};
}

// ----------------------------------------------------------------- convert

/// Round-trip residual of a candidate filter against its target.
inline double roundtrip_residual(const HyperFilter1& f, const RealTransfer3& target) {
    const auto e = expand(f);
    double r = 0.0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::fabs(e.num[i] - target.num[i]));
    for (int i = 0; i < 3; ++i) r = std::max(r, std::fabs(e.den[i] - target.den[i]));
    return r;
}

/// Full conversion: denominator solve, then numerator solve with the two
/// free components fixed. The result is verified to reproduce the target to
/// 1e-9 per coefficient before it is returned.
inline HyperFilter1 convert(const RealTransfer3& target, double a3 = 0.0, double b2 = 0.0,
                            Branch branch = Branch::negative) {
    const auto C = solve_denominator(target, branch);
    auto [A, B] = solve_numerator(target, C, a3, b2);
    HyperFilter1 f{A, B, C, a3, b2};
    const double resid = roundtrip_residual(f, target);
    if (resid > 1e-9) throw ConversionFailed(resid);
    return f;
}

// ---------------------------------------------------------------- evaluate

enum class EvalPath { rationalized, direct };

/// Evaluate the first-order form at a complex z. The rationalized path runs
/// the expanded real-rational function; the direct path computes
/// (A + B/z) * inverse(1 + C/z) with complex scalars in the algebra and
/// returns the e_0 component. The two agree to roundoff away from poles.
inline std::complex<double> evaluate(const HyperFilter1& f, std::complex<double> z,
                                     EvalPath path = EvalPath::rationalized) {
    if (path == EvalPath::rationalized) {
        const auto e = expand(f);
        return to_std(detail::eval_rational_w(e.num, e.den, from_std(1.0 / z)));
    }
    const AlgebraTable& table = f.A.table();
    const Cx<double> w = from_std(1.0 / z);
    auto lift = [&](const HnsElement<double>& x, bool scale_by_w) {
        HnsElement<Cx<double>> out(table);
        for (std::size_t k = 0; k < table.dim(); ++k)
            out[k] = scale_by_w ? Cx<double>(x[k]) * w : Cx<double>(x[k]);
        return out;
    };
    const auto numer = lift(f.A, false) + lift(f.B, true);
    const auto denom = HnsElement<Cx<double>>::unit(table) + lift(f.C, true);
    const auto h = mul(numer, inverse(denom));  // NearZeroNorm near poles
    return to_std(h[0]);
}

}  // namespace hyperfilt
