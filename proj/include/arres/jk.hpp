#pragma once

#include <vector>

#include <arres/residue.hpp>

namespace arres {

/// Reference data for orientation signs and lattice volumes: an ordered
/// orientation basis xi and a lattice basis, both defaulting to the standard
/// basis.
struct OrientationContext {
    Mat xi;
    Mat lattice;

    static OrientationContext standard(int r) {
        return OrientationContext{Mat::identity(r), Mat::identity(r)};
    }
};

inline void check_context(const Arrangement& arr, const OrientationContext& ctx) {
    if (ctx.xi.rows() != static_cast<std::size_t>(arr.rank) || ctx.xi.cols() != ctx.xi.rows())
        throw domain_error("orientation: xi must be an r x r basis");
    if (ctx.lattice.rows() != static_cast<std::size_t>(arr.rank) || ctx.lattice.cols() != ctx.lattice.rows())
        throw domain_error("orientation: lattice must be an r x r basis");
    if (det(ctx.xi).is_zero()) throw domain_error("orientation: xi is singular");
    if (det(ctx.lattice).is_zero()) throw domain_error("orientation: lattice basis is singular");
}

/// Regular vectors avoid the span of every subset of fewer than r elements,
/// equivalently of every rank r-1 flat.
inline bool is_regular(const Arrangement& arr, const Vec& c) {
    if (c.size() != static_cast<std::size_t>(arr.rank)) throw domain_error("is_regular: wrong dimension");
    for (const auto& flat : enumerate_flats(arr)) {
        if (subset_rank(arr, flat) != arr.rank - 1) continue;
        if (in_span(gather(arr, flat), c)) return false;
    }
    return true;
}

/// Membership in the open simplicial cone spanned by a basis: all solve
/// coefficients strictly positive.
inline bool cone_contains(const Arrangement& arr, const OrderedBasis& sigma, const Vec& c) {
    const auto vs = gather(arr, sigma);
    if (rank(vs) != static_cast<int>(sigma.size()) || sigma.size() != static_cast<std::size_t>(arr.rank))
        throw domain_error("cone_contains: sigma is not a basis");
    const auto coeffs = solve(Mat::from_columns(vs), c);
    if (!coeffs) return false;
    for (const auto& a : *coeffs)
        if (a.sign() <= 0) return false;
    return true;
}

/// +1 when the ordered vectors agree with the xi orientation, -1 otherwise.
inline int nu_sign(const OrientationContext& ctx, const std::vector<Vec>& tau) {
    std::vector<Vec> xi_rows;
    for (std::size_t i = 0; i < ctx.xi.rows(); ++i) xi_rows.push_back(ctx.xi.row(i));
    const Mat xi_cols = Mat::from_columns(xi_rows);
    std::vector<Vec> coords;
    for (const auto& t : tau) {
        const auto c = solve(xi_cols, t);
        if (!c) throw domain_error("nu_sign: vector outside the xi span");
        coords.push_back(*c);
    }
    const Rational d = det(Mat::from_columns(coords));
    if (d.is_zero()) throw domain_error("nu_sign: dependent vectors");
    return d.sign();
}

inline int nu_sign(const Arrangement& arr, const OrientationContext& ctx, const OrderedBasis& tau) {
    return nu_sign(ctx, gather(arr, tau));
}

/// Index in the reference lattice of the sublattice spanned by the given
/// basis: |det| of its integer coordinates in the lattice basis.
inline Rational lattice_index(const OrientationContext& ctx, const std::vector<Vec>& sigma) {
    std::vector<Vec> lat_rows;
    for (std::size_t i = 0; i < ctx.lattice.rows(); ++i) lat_rows.push_back(ctx.lattice.row(i));
    const Mat lat_cols = Mat::from_columns(lat_rows);
    std::vector<Vec> coords;
    for (const auto& s : sigma) {
        const auto c = solve(lat_cols, s);
        if (!c) throw domain_error("lattice_index: vector outside the lattice span");
        for (const auto& e : *c)
            if (!e.is_integer()) throw domain_error("lattice_index: vector not in the lattice");
        coords.push_back(*c);
    }
    const Rational d = det(Mat::from_columns(coords));
    if (d.is_zero()) throw domain_error("lattice_index: dependent vectors");
    return d.abs();
}

inline Rational lattice_index(const Arrangement& arr, const OrientationContext& ctx, const OrderedBasis& sigma) {
    return lattice_index(ctx, gather(arr, sigma));
}

/// True iff some linear functional is strictly positive on the whole
/// arrangement. Exact: the polyhedron {y : <alpha_i, y> >= 1} is pointed
/// (the vectors span), so feasibility is witnessed at a vertex, i.e. at a
/// solution of r independent tight constraints.
inline bool delta_positive_halfspace(const Arrangement& arr) {
    const int r = arr.rank, m = arr.size();
    std::vector<int> pick;
    const Vec ones(static_cast<std::size_t>(r), Rational(1));
    auto feasible_at = [&](const Vec& y) {
        for (int i = 0; i < m; ++i)
            if (dot(arr.vectors[i], y) < Rational(1)) return false;
        return true;
    };
    bool found = false;
    auto rec = [&](auto&& self, int start) -> void {
        if (found) return;
        if (static_cast<int>(pick.size()) == r) {
            const auto vs = gather(arr, pick);
            if (rank(vs) != r) return;
            const auto y = solve(Mat::from_rows(vs), ones);
            if (y && feasible_at(*y)) found = true;
            return;
        }
        for (int i = start; i < m && !found; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

/// The cycle decomposition of the chamber of a regular point: every proper
/// maximal nested set whose phi-cone contains the point, with its orientation
/// sign.
inline std::vector<std::pair<ProperMns, int>> delta_decomposition(const Arrangement& arr,
                                                                  const OrientationContext& ctx,
                                                                  const Vec& c) {
    check_context(arr, ctx);
    if (!is_regular(arr, c)) throw domain_error("delta_decomposition: point is not regular");
    std::vector<std::pair<ProperMns, int>> out;
    for (auto& pm : enumerate_proper_mns(arr)) {
        if (!cone_contains(arr, pm.phi, c)) continue;
        const int nu = nu_sign(arr, ctx, pm.phi);
        out.emplace_back(std::move(pm), nu);
    }
    return out;
}

/// The Jeffrey-Kirwan residue at chamber point c: the signed sum of residues
/// over the chamber's cycle decomposition.
inline Rational jk_residue(const Arrangement& arr, const OrientationContext& ctx, const Vec& c,
                           const RationalTopForm& psi) {
    if (!delta_positive_halfspace(arr))
        throw domain_error("jk_residue: arrangement is not contained in an open half-space");
    Rational total;
    for (const auto& [pm, nu] : delta_decomposition(arr, ctx, c))
        total += Rational(nu) * residue(arr, psi, pm);
    return total;
}

/// The Laplace-picture evaluation: expand the top-cohomology component of psi
/// in the NBC-basis forms, then evaluate the inverse-transform combination of
/// cone characteristic functions at c.
inline Rational jk_oracle_laplace(const Arrangement& arr, const OrientationContext& ctx, const Vec& c,
                                  const RationalTopForm& psi) {
    if (!delta_positive_halfspace(arr))
        throw domain_error("jk_oracle_laplace: arrangement is not contained in an open half-space");
    check_context(arr, ctx);
    if (!is_regular(arr, c)) throw domain_error("jk_oracle_laplace: point is not regular");
    const auto props = enumerate_proper_mns(arr);
    const auto coords = project(arr, psi);
    Rational total;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (coords[i].is_zero() || !cone_contains(arr, props[i].phi, c)) continue;
        total += coords[i] * Rational(nu_sign(arr, ctx, props[i].phi));
    }
    return total;
}

/// Direct chi-expansion value of a combination sum q_sigma omega_sigma: the
/// terms whose cones contain c, weighted by their orientation signs. Needs no
/// residues at all, which makes it an independent cross-check of jk_residue.
inline Rational jk_combination_value(const Arrangement& arr, const OrientationContext& ctx, const Vec& c,
                                     const std::vector<std::pair<OrderedBasis, Rational>>& combo) {
    if (!delta_positive_halfspace(arr))
        throw domain_error("jk_combination_value: arrangement is not contained in an open half-space");
    check_context(arr, ctx);
    if (!is_regular(arr, c)) throw domain_error("jk_combination_value: point is not regular");
    Rational total;
    for (const auto& [sigma, q] : combo) {
        if (q.is_zero() || !cone_contains(arr, sigma, c)) continue;
        total += q * Rational(nu_sign(arr, ctx, sigma));
    }
    return total;
}

/// Assembles P(alpha_1,...,alpha_m) / (alpha_1 ... alpha_m) dx from a
/// polynomial in the formal alpha symbols.
inline RationalTopForm alpha_poly_form(const Arrangement& arr, const Poly& p_alphas) {
    if (p_alphas.nvars() != arr.size())
        throw domain_error("alpha polynomial: variable count != arrangement size");
    std::vector<Poly> images;
    for (int i = 0; i < arr.size(); ++i) images.push_back(alpha_form(arr, i));
    RationalTopForm f = zero_form(arr);
    f.numerator = p_alphas.compose(images);
    for (int i = 0; i < arr.size(); ++i) f.den_exps[i] = 1;
    return f;
}

/// The intersection-number functional: JK residue of P(alpha)/(prod alpha) dx
/// with the lattice-normalized measure (trivial for the standard lattice).
inline Rational intersection_number(const Arrangement& arr, const OrientationContext& ctx, const Vec& c,
                                    const Poly& p_alphas) {
    return jk_residue(arr, ctx, c, alpha_poly_form(arr, p_alphas));
}

} // namespace arres
