#pragma once

#include <vector>

#include <arres/nested.hpp>
#include <arres/poly.hpp>

namespace arres {

/// A top-degree form P / prod alpha_i^{d_i} dx_1 ^ ... ^ dx_r with polynomial
/// numerator and denominator supported on the arrangement. The zero form has
/// an empty numerator.
struct RationalTopForm {
    Poly numerator;                // in the ambient coordinates x_1..x_r
    std::vector<int> den_exps;     // one exponent per arrangement element
};

inline void check_form(const Arrangement& arr, const RationalTopForm& f) {
    if (f.numerator.nvars() != arr.rank) throw domain_error("form: numerator variable count != rank");
    if (f.den_exps.size() != static_cast<std::size_t>(arr.size()))
        throw domain_error("form: denominator length != arrangement size");
    for (int d : f.den_exps)
        if (d < 0) throw domain_error("form: negative denominator exponent");
}

inline RationalTopForm zero_form(const Arrangement& arr) {
    return RationalTopForm{Poly(arr.rank), std::vector<int>(arr.size(), 0)};
}

inline bool form_is_zero(const RationalTopForm& f) { return f.numerator.is_zero(); }

inline Poly alpha_form(const Arrangement& arr, int i) { return Poly::linear(arr.vectors[i]); }

/// omega_sigma = dlog g_1 ^ ... ^ dlog g_r: determinant constant over the
/// product of the basis forms.
inline RationalTopForm form_of_basis(const Arrangement& arr, const OrderedBasis& sigma) {
    for (int i : sigma)
        if (i < 0 || i >= arr.size()) throw domain_error("form_of_basis: index out of range");
    if (sigma.size() != static_cast<std::size_t>(arr.rank))
        throw domain_error("form_of_basis: wrong basis size");
    const Rational d = det(Mat::from_rows(gather(arr, sigma)));
    if (d.is_zero()) throw domain_error("form_of_basis: dependent input");
    RationalTopForm f = zero_form(arr);
    f.numerator = Poly::constant(arr.rank, d);
    for (int i : sigma) f.den_exps[i] += 1;
    return f;
}

inline RationalTopForm scale_form(const RationalTopForm& f, const Rational& c) {
    return RationalTopForm{f.numerator.scaled(c), f.den_exps};
}

inline RationalTopForm add_forms(const Arrangement& arr, const RationalTopForm& a, const RationalTopForm& b) {
    check_form(arr, a);
    check_form(arr, b);
    RationalTopForm out = zero_form(arr);
    for (int i = 0; i < arr.size(); ++i) out.den_exps[i] = std::max(a.den_exps[i], b.den_exps[i]);
    auto lift = [&](const RationalTopForm& f) {
        Poly p = f.numerator;
        for (int i = 0; i < arr.size(); ++i)
            for (int k = f.den_exps[i]; k < out.den_exps[i]; ++k) p = p * alpha_form(arr, i);
        return p;
    };
    out.numerator = lift(a) + lift(b);
    return out;
}

/// Exact equality as rational functions (cross-multiplied numerators).
inline bool forms_equal(const Arrangement& arr, const RationalTopForm& a, const RationalTopForm& b) {
    const auto diff = add_forms(arr, a, scale_form(b, Rational(-1)));
    return form_is_zero(diff);
}

/// The alternating sum over omissions of one of r+1 spanning elements,
/// assembled over the common denominator; terms whose remaining vectors are
/// dependent vanish and are omitted. The contract is that the result is the
/// zero form.
inline RationalTopForm circuit_relation(const Arrangement& arr, const std::vector<int>& gammas) {
    if (gammas.size() != static_cast<std::size_t>(arr.rank) + 1)
        throw domain_error("circuit_relation: need r+1 elements");
    std::set<int> uniq(gammas.begin(), gammas.end());
    if (uniq.size() != gammas.size()) throw domain_error("circuit_relation: repeated element");
    if (rank(gather(arr, IndexSubset(uniq.begin(), uniq.end()))) != arr.rank)
        throw domain_error("circuit_relation: non-spanning input");
    RationalTopForm out = zero_form(arr);
    for (int g : gammas) out.den_exps[g] = 1;
    Poly num(arr.rank);
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        std::vector<Vec> rest;
        for (std::size_t j = 0; j < gammas.size(); ++j)
            if (j != i) rest.push_back(arr.vectors[gammas[j]]);
        if (rank(rest) != arr.rank) continue; // dependent wedge vanishes
        const Rational dt = det(Mat::from_rows(rest));
        const Rational sign = (i + 1) % 2 == 0 ? Rational(1) : Rational(-1);
        num = num + alpha_form(arr, gammas[i]).scaled(sign * dt);
    }
    out.numerator = num;
    return out;
}

/// The monomial-times-unit factorization of every arrangement element in the
/// local coordinates z_S attached to a proper maximal nested set: the element
/// with minimal containing member B becomes z^{E} * f where E marks the
/// members containing B and f is a polynomial with nonzero constant term.
struct LocalFactorization {
    std::vector<IndexSubset> members;        // phi-order
    Mat phi_rows;                            // rows = the phi-basis vectors
    Rational det_phi;                        // nonzero by properness
    std::vector<std::vector<Rational>> inv_phi; // inverse of phi_rows
    std::vector<std::vector<int>> monomial;  // E(alpha_i) over members
    std::vector<Poly> unit;                  // f_i, polynomial in the z variables
    std::vector<std::vector<int>> u_monomial; // exponents of u_k as z-monomial
    std::vector<int> contained_count;        // members contained in member j, itself included
};

inline LocalFactorization local_factorization(const Arrangement& arr, const ProperMns& pm) {
    const int r = arr.rank, m = arr.size();
    if (pm.mns.members.size() != static_cast<std::size_t>(r) ||
        pm.phi.size() != static_cast<std::size_t>(r))
        throw domain_error("local_factorization: nested set must have r members and r minima");
    LocalFactorization lf;
    lf.members = pm.mns.members;
    lf.phi_rows = Mat::from_rows(gather(arr, pm.phi));
    lf.det_phi = det(lf.phi_rows);
    if (lf.det_phi.is_zero()) throw domain_error("local_factorization: nested set is not proper");

    lf.inv_phi.assign(r, std::vector<Rational>(r));
    for (int k = 0; k < r; ++k) {
        Vec e(r);
        e[k] = Rational(1);
        const auto col = solve(lf.phi_rows, e);
        for (int j = 0; j < r; ++j) lf.inv_phi[j][k] = (*col)[j];
    }

    lf.u_monomial.assign(r, std::vector<int>(r, 0));
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j)
            if (detail::subset_contains(lf.members[j], lf.members[k])) lf.u_monomial[k][j] = 1;

    lf.contained_count.assign(r, 0);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
            if (detail::subset_contains(lf.members[j], lf.members[k])) lf.contained_count[j] += 1;

    const Mat phi_cols = Mat::from_columns(gather(arr, pm.phi));
    for (int i = 0; i < m; ++i) {
        const auto coeffs = solve(phi_cols, arr.vectors[i]);
        const auto b = p_map(arr, pm.mns, i);
        const auto bpos = static_cast<int>(
            std::find(lf.members.begin(), lf.members.end(), b) - lf.members.begin());
        std::vector<int> e(r, 0);
        for (int j = 0; j < r; ++j)
            if (detail::subset_contains(lf.members[j], b)) e[j] = 1;
        Poly f(r);
        for (int k = 0; k < r; ++k) {
            const Rational& c = (*coeffs)[k];
            if (c.is_zero()) continue;
            if (!detail::subset_contains(b, lf.members[k]))
                throw std::logic_error("local_factorization: coefficient outside the member chain");
            std::vector<int> rel(r);
            for (int j = 0; j < r; ++j) rel[j] = lf.u_monomial[k][j] - e[j];
            f.add_term(rel, c);
        }
        if ((*coeffs)[bpos].is_zero())
            throw std::logic_error("local_factorization: vanishing constant term");
        lf.monomial.push_back(std::move(e));
        lf.unit.push_back(std::move(f));
    }
    return lf;
}

namespace detail {

inline TruncatedSeries poly_to_series(const Poly& p, const std::vector<int>& caps) {
    TruncatedSeries s(static_cast<int>(caps.size()), caps);
    for (const auto& [e, c] : p.terms()) s.add_term(e, c);
    return s;
}

} // namespace detail

/// The residue of the form at the point at infinity of a proper maximal
/// nested set: the coefficient of (z_1...z_r)^{-1} in the exact Laurent
/// expansion through the local coordinates. The u -> z exponent matrix is
/// unitriangular in the phi-order, so its dlog determinant is 1 and only the
/// linear change of coordinates contributes a Jacobian factor.
inline Rational residue(const Arrangement& arr, const RationalTopForm& psi, const ProperMns& pm) {
    check_form(arr, psi);
    const int r = arr.rank, m = arr.size();
    const auto lf = local_factorization(arr, pm);

    std::vector<int> den_deg(r, 0); // z-degree of the denominator monomial part
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j) den_deg[j] += psi.den_exps[i] * lf.monomial[i][j];

    std::vector<int> target(r);
    for (int j = 0; j < r; ++j) {
        target[j] = den_deg[j] - lf.contained_count[j];
        if (target[j] < 0) return Rational(0); // numerator side has no negative exponents
    }

    // Truncating at the target exponent is enough: every contribution to the
    // queried coefficient splits into factors of componentwise-smaller degree.
    const auto& caps = target;
    std::vector<TruncatedSeries> x_images;
    for (int j = 0; j < r; ++j) {
        TruncatedSeries img(r, caps);
        for (int k = 0; k < r; ++k)
            if (!lf.inv_phi[j][k].is_zero()) img.add_term(lf.u_monomial[k], lf.inv_phi[j][k]);
        x_images.push_back(std::move(img));
    }
    TruncatedSeries numer = psi.numerator.compose_series(x_images, caps);

    TruncatedSeries units = TruncatedSeries::constant(r, caps, Rational(1));
    for (int i = 0; i < m; ++i) {
        if (psi.den_exps[i] == 0) continue;
        units = units * detail::poly_to_series(lf.unit[i], caps).pow(psi.den_exps[i]);
    }

    const TruncatedSeries total = numer * units.invert_unit();
    return inverse(lf.det_phi) * total.coefficient(target);
}

/// Residues of the forms of all proper nested sets against all cycles, in the
/// canonical enumeration order. The contract is the identity matrix.
inline std::vector<std::vector<Rational>> pairing_matrix(const Arrangement& arr) {
    const auto props = enumerate_proper_mns(arr);
    std::vector<std::vector<Rational>> out(props.size(), std::vector<Rational>(props.size()));
    for (std::size_t j = 0; j < props.size(); ++j) {
        const auto omega = form_of_basis(arr, props[j].phi);
        for (std::size_t i = 0; i < props.size(); ++i) out[i][j] = residue(arr, omega, props[i]);
    }
    return out;
}

/// Coefficients of the top-cohomology component of psi against the NBC-basis
/// forms, aligned with enumerate_proper_mns order.
inline std::vector<Rational> project(const Arrangement& arr, const RationalTopForm& psi) {
    std::vector<Rational> out;
    for (const auto& pm : enumerate_proper_mns(arr)) out.push_back(residue(arr, psi, pm));
    return out;
}

/// (d/dx_var)(Q / prod alpha_i^{k_i}) dx as a RationalTopForm; exact forms
/// like this must have vanishing residues everywhere.
inline RationalTopForm derivative_form(const Arrangement& arr, const Poly& q,
                                       const std::vector<int>& k_exps, int var) {
    if (k_exps.size() != static_cast<std::size_t>(arr.size()))
        throw domain_error("derivative_form: exponent list size mismatch");
    const int m = arr.size();
    Poly all = Poly::constant(arr.rank, Rational(1));
    for (int i = 0; i < m; ++i) all = all * alpha_form(arr, i);
    Poly num = q.derivative(var) * all;
    for (int i = 0; i < m; ++i) {
        const Rational a_iv = arr.vectors[i][var];
        if (k_exps[i] == 0 || a_iv.is_zero()) continue;
        Poly others = Poly::constant(arr.rank, Rational(1));
        for (int t = 0; t < m; ++t)
            if (t != i) others = others * alpha_form(arr, t);
        num = num - (q * others).scaled(Rational(k_exps[i]) * a_iv);
    }
    RationalTopForm f = zero_form(arr);
    f.numerator = num;
    for (int i = 0; i < m; ++i) f.den_exps[i] = k_exps[i] + 1;
    return f;
}

} // namespace arres
