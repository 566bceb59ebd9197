#pragma once

// =============================================================================
// Algebra isomorphism search for dimension-3 commutative tables.
//
// Strategy: locate a nontrivial idempotent u (u*u = u, u not 0 or 1) by
// Newton iteration from random starts. u splits the algebra into the ideals
// u*A and (1-u)*A; for the systems handled here one ideal is 1-dimensional
// (a copy of the reals) and the other is 2-dimensional with a complex
// structure. Mapping the adapted basis (real unit, 2-block unit, complex
// unit) of the source onto that of the destination gives a candidate linear
// map, which is then verified as a homomorphism on all basis products.
// =============================================================================

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hyperfilt/algebra.hpp"
#include "hyperfilt/errors.hpp"

namespace hyperfilt {

namespace detail {

inline double vec_norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Orthonormal basis of the column space, modified Gram-Schmidt with a
/// relative drop tolerance.
inline std::vector<std::vector<double>> column_space(const Mat<double>& m, double tol = 1e-9) {
    std::vector<std::vector<double>> basis;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        std::vector<double> v = m.col(j);
        const double scale = std::sqrt(vec_dot(v, v));
        if (scale == 0.0) continue;
        for (const auto& q : basis) {
            const double p = vec_dot(v, q);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * q[i];
        }
        const double rem = std::sqrt(vec_dot(v, v));
        if (rem > tol * scale) {
            for (auto& x : v) x /= rem;
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

/// Basis adapted to the idempotent split: columns (real unit, 2-block unit,
/// complex unit j with j*j = -unit). Empty when the split does not have the
/// 1+2 shape or the 2-block carries no complex structure.
inline std::optional<Mat<double>> adapted_basis(const AlgebraTable& table,
                                                const HnsElement<double>& idem) {
    const auto one = HnsElement<double>::unit(table);
    const auto comp = one - idem;

    const auto rank_of = [](const HnsElement<double>& x) {
        return column_space(regular_rep(x)).size();
    };

    HnsElement<double> w1 = idem, w2 = comp;
    if (rank_of(w1) != 1) std::swap(w1, w2);
    if (rank_of(w1) != 1 || rank_of(w2) != 2) return std::nullopt;

    // Pick a 2-block vector least aligned with the block unit, then project
    // the unit direction out of it.
    const auto block = column_space(regular_rep(w2));
    const std::vector<double>& wc = w2.coeffs();
    const double wn2 = vec_dot(wc, wc);
    std::vector<double> t;
    double best = 0.0;
    for (const auto& q : block) {
        std::vector<double> r = q;
        const double p = vec_dot(q, wc) / wn2;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p * wc[i];
        const double n = std::sqrt(vec_dot(r, r));
        if (n > best) {
            best = n;
            t = std::move(r);
        }
    }
    if (best < 1e-9) return std::nullopt;
    for (auto& x : t) x /= best;

    // t*t = alpha*w2 + beta*t in the block; 3 equations, 2 unknowns.
    HnsElement<double> te(table, t);
    const auto t2 = mul(te, te);
    Mat<double> ntA(2);
    std::vector<double> ntb(2);
    const std::vector<double>& tc = te.coeffs();
    ntA.at(0, 0) = vec_dot(wc, wc);
    ntA.at(0, 1) = vec_dot(wc, tc);
    ntA.at(1, 0) = ntA.at(0, 1);
    ntA.at(1, 1) = vec_dot(tc, tc);
    ntb[0] = vec_dot(wc, t2.coeffs());
    ntb[1] = vec_dot(tc, t2.coeffs());
    std::vector<double> ab;
    try {
        ab = solve_dense(ntA, ntb);
    } catch (const SingularSystem&) {
        return std::nullopt;
    }
    const double alpha = ab[0], beta = ab[1];
    auto resid = t2 - alpha * w2 - beta * te;
    if (vec_norm_inf(resid.coeffs()) > 1e-8) return std::nullopt;

    const double disc = alpha + 0.25 * beta * beta;
    if (disc >= -1e-12) return std::nullopt;  // split block, no complex unit
    auto j = (te - (beta / 2.0) * w2) * (1.0 / std::sqrt(-disc));

    Mat<double> basis(table.dim());
    for (std::size_t i = 0; i < table.dim(); ++i) {
        basis.at(i, 0) = w1[i];
        basis.at(i, 1) = w2[i];
        basis.at(i, 2) = j[i];
    }
    return basis;
}

inline Mat<double> mat_mul(const Mat<double>& a, const Mat<double>& b) {
    Mat<double> r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.dim(); ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

inline Mat<double> mat_inverse(const Mat<double>& m) {
    const double d = det(m);
    if (std::fabs(d) < 1e-12) throw SingularSystem(1.0 / std::max(std::fabs(d), 1e-300));
    Mat<double> adj = adjugate(m);
    Mat<double> r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r.at(i, j) = adj.at(i, j) / d;
    return r;
}

}  // namespace detail

/// Apply a coefficient-space linear map, landing in the destination table.
inline HnsElement<double> apply_map(const Mat<double>& m, const HnsElement<double>& x,
                                    const AlgebraTable& dst) {
    std::vector<double> out(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m.at(i, j) * x[j];
    return HnsElement<double>(dst, std::move(out));
}

/// Worst componentwise deviation of M(e_i e_j) from M(e_i) M(e_j) over all
/// basis pairs.
inline double homomorphism_residual(const Mat<double>& m, const AlgebraTable& src,
                                    const AlgebraTable& dst) {
    double worst = 0.0;
    for (std::size_t i = 0; i < src.dim(); ++i) {
        for (std::size_t j = 0; j < src.dim(); ++j) {
            const auto ei = HnsElement<double>::basis(src, i);
            const auto ej = HnsElement<double>::basis(src, j);
            const auto lhs = apply_map(m, mul(ei, ej), dst);
            const auto rhs = mul(apply_map(m, ei, dst), apply_map(m, ej, dst));
            worst = std::max(worst, detail::vec_norm_inf((lhs - rhs).coeffs()));
        }
    }
    return worst;
}

/// Nontrivial idempotents found by Newton iteration on u*u - u = 0 from
/// `starts` random starts. Deterministic for a fixed seed; results are
/// deduplicated and sorted by coefficients.
inline std::vector<HnsElement<double>> nontrivial_idempotents(const AlgebraTable& table,
                                                              int starts = 64,
                                                              int max_iters = 100,
                                                              double tol = 1e-12,
                                                              std::uint64_t seed = 0x5eedULL) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const std::size_t n = table.dim();
    const auto one = HnsElement<double>::unit(table);
    std::vector<HnsElement<double>> found;

    for (int s = 0; s < starts; ++s) {
        HnsElement<double> u(table);
        for (std::size_t k = 0; k < n; ++k) u[k] = dist(rng);

        bool converged = false;
        for (int it = 0; it < max_iters; ++it) {
            const auto f = mul(u, u) - u;
            if (detail::vec_norm_inf(f.coeffs()) < tol) {
                converged = true;
                break;
            }
            // Jacobian of u*u - u is 2 L_u - I.
            Mat<double> jac = regular_rep(u);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    jac.at(i, j) = 2.0 * jac.at(i, j) - (i == j ? 1.0 : 0.0);
            std::vector<double> step;
            try {
                step = solve_dense(jac, f.coeffs());
            } catch (const SingularSystem&) {
                break;
            }
            for (std::size_t k = 0; k < n; ++k) u[k] -= step[k];
        }
        if (!converged) continue;
        if (detail::vec_norm_inf(u.coeffs()) < 1e-6) continue;
        if (detail::vec_norm_inf((u - one).coeffs()) < 1e-6) continue;
        bool dup = false;
        for (const auto& v : found)
            if (detail::vec_norm_inf((u - v).coeffs()) < 1e-6) dup = true;
        if (!dup) found.push_back(u);
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.coeffs() < b.coeffs();
    });
    return found;
}

/// Invertible M with M(x*y) = M(x)*M(y), found through idempotent splits and
/// verified on all basis products to 1e-9. Throws NoIsomorphismFound when
/// the search budget is exhausted (in particular when no isomorphism
/// exists).
inline Mat<double> find_isomorphism(const AlgebraTable& src, const AlgebraTable& dst) {
    if (src.dim() != 3 || dst.dim() != 3)
        throw std::invalid_argument("find_isomorphism: only dimension-3 tables are supported");

    const auto idems_src = nontrivial_idempotents(src);
    const auto idems_dst = nontrivial_idempotents(dst);
    if (idems_src.empty() || idems_dst.empty())
        throw NoIsomorphismFound("no nontrivial idempotent found within the start budget");

    for (const auto& us : idems_src) {
        const auto bs = detail::adapted_basis(src, us);
        if (!bs) continue;
        for (const auto& ud : idems_dst) {
            const auto bd = detail::adapted_basis(dst, ud);
            if (!bd) continue;
            Mat<double> m;
            try {
                m = detail::mat_mul(*bd, detail::mat_inverse(*bs));
            } catch (const SingularSystem&) {
                continue;
            }
            if (std::fabs(det(m)) < 1e-9) continue;
            if (homomorphism_residual(m, src, dst) <= 1e-9) return m;
        }
    }
    throw NoIsomorphismFound("idempotent splits exhausted without a verified homomorphism");
}

}  // namespace hyperfilt
