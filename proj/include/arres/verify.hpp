#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <arres/residue.hpp>

namespace arres {

/// Numeric contour-integration parameters. The torus radius must keep every
/// local unit nonvanishing on the closed polydisk, certified by an exact
/// coefficient-norm bound before any float is touched.
struct QuadratureSpec {
    Rational epsilon{1, 8};
    int grid = 64;
    double tolerance = 1e-6;
};

inline void check_quadrature_spec(const QuadratureSpec& spec) {
    if (spec.epsilon.sign() <= 0) throw domain_error("quadrature: epsilon must be positive");
    if (spec.grid < 1) throw domain_error("quadrature: grid must be at least 1");
    if (!(spec.tolerance > 0)) throw domain_error("quadrature: tolerance must be positive");
}

/// Exact lower bound: |constant| must exceed the sum of the other
/// coefficients' magnitudes scaled by epsilon^degree.
inline void check_units_nonvanishing(const LocalFactorization& lf, const Rational& epsilon) {
    for (const auto& f : lf.unit) {
        Rational constant, rest;
        for (const auto& [e, c] : f.terms()) {
            int deg = 0;
            for (int x : e) deg += x;
            if (deg == 0) {
                constant = c.abs();
            } else {
                Rational p(1);
                for (int i = 0; i < deg; ++i) p *= epsilon;
                rest += c.abs() * p;
            }
        }
        if (!(constant > rest))
            throw domain_error("quadrature: epsilon too large for unit nonvanishing bound");
    }
}

namespace detail {

inline std::complex<double> pairwise_sum(std::vector<std::complex<double>>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

} // namespace detail

/// Trapezoid-rule approximation of (1/(2 pi i)^r) times the integral of psi
/// over the small torus cycle of a proper maximal nested set. The integrand
/// is the exact pullback evaluated in floating point; convergence is spectral
/// in the grid size for these analytic integrands.
inline std::complex<double> numeric_cycle_integral(const Arrangement& arr, const RationalTopForm& psi,
                                                   const ProperMns& pm, const QuadratureSpec& spec) {
    check_quadrature_spec(spec);
    check_form(arr, psi);
    const int r = arr.rank, m = arr.size();
    const auto lf = local_factorization(arr, pm);
    check_units_nonvanishing(lf, spec.epsilon);

    const double eps = spec.epsilon.to_double();
    const int n = spec.grid;
    const double inv_det = inverse(lf.det_phi).to_double();

    std::vector<std::complex<double>> samples;
    samples.reserve(static_cast<std::size_t>(std::pow(n, r)));
    std::vector<int> idx(r, 0);
    std::vector<std::complex<double>> z(r), u(r), x(r);
    while (true) {
        for (int j = 0; j < r; ++j) {
            const double th = 2.0 * M_PI * idx[j] / n;
            z[j] = std::polar(eps, th);
        }
        std::complex<double> u_prod = 1.0;
        for (int k = 0; k < r; ++k) {
            std::complex<double> uk = 1.0;
            for (int j = 0; j < r; ++j)
                if (lf.u_monomial[k][j]) uk *= z[j];
            u[k] = uk;
            u_prod *= uk;
        }
        for (int j = 0; j < r; ++j) {
            std::complex<double> xj = 0.0;
            for (int k = 0; k < r; ++k)
                if (!lf.inv_phi[j][k].is_zero()) xj += lf.inv_phi[j][k].to_double() * u[k];
            x[j] = xj;
        }
        std::complex<double> den = 1.0;
        for (int i = 0; i < m; ++i) {
            if (psi.den_exps[i] == 0) continue;
            std::complex<double> a = 0.0;
            for (int j = 0; j < r; ++j) a += arr.vectors[i][j].to_double() * x[j];
            for (int d = 0; d < psi.den_exps[i]; ++d) den *= a;
        }
        samples.push_back(psi.numerator.eval(x) / den * inv_det * u_prod);

        int j = r - 1;
        while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
        if (j < 0) break;
    }
    const auto total = detail::pairwise_sum(samples, 0, samples.size()) / double(samples.size());
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw domain_error("quadrature: non-finite value encountered");
    return total;
}

struct BruteIrreducibility {
    bool irreducible = true;
    std::optional<std::pair<IndexSubset, IndexSubset>> witness;
};

/// Exhaustive bipartition test of rank additivity. Exponential; guarded.
inline BruteIrreducibility brute_irreducibility(const Arrangement& arr, const IndexSubset& s) {
    if (!is_complete(arr, s)) throw domain_error("brute_irreducibility: subset is not complete");
    if (s.size() > 20) throw domain_error("brute_irreducibility: subset too large");
    const int k = static_cast<int>(s.size());
    const int total = subset_rank(arr, s);
    for (std::size_t mask = 1; k > 1 && mask < (std::size_t{1} << (k - 1)); ++mask) {
        IndexSubset s1{s[0]}, s2;
        for (int i = 1; i < k; ++i)
            ((mask >> (i - 1)) & 1 ? s2 : s1).push_back(s[i]);
        if (subset_rank(arr, s1) + subset_rank(arr, s2) == total)
            return BruteIrreducibility{false, std::make_pair(s1, s2)};
    }
    return BruteIrreducibility{};
}

/// Independent route to the maximal nested sets: decompose every maximal flag
/// of flats (ranks r down to 1), de-duplicate, and verify non-extendability
/// directly against the whole family of irreducibles.
inline std::vector<MaximalNestedSet> brute_maximal_nested(const Arrangement& arr) {
    const auto flats = enumerate_flats(arr);
    if (flats.size() > 200) throw domain_error("brute_maximal_nested: flat lattice too large");
    std::vector<int> flat_rank;
    flat_rank.reserve(flats.size());
    for (const auto& f : flats) flat_rank.push_back(subset_rank(arr, f));

    std::set<std::vector<IndexSubset>> families;
    std::vector<IndexSubset> chain;
    auto rec = [&](auto&& self, const IndexSubset& top, int top_rank) -> void {
        chain.push_back(top);
        if (top_rank == 1) {
            auto fam = decompose_flag(arr, Flag{chain});
            families.insert(std::move(fam));
        } else {
            for (std::size_t t = 0; t < flats.size(); ++t) {
                if (flat_rank[t] != top_rank - 1) continue;
                if (!detail::subset_contains(top, flats[t]) || flats[t] == top) continue;
                self(self, flats[t], top_rank - 1);
            }
        }
        chain.pop_back();
    };
    IndexSubset all(arr.size());
    std::iota(all.begin(), all.end(), 0);
    rec(rec, all, arr.rank);

    const auto irr = enumerate_irreducibles(arr);
    std::vector<MaximalNestedSet> out;
    for (const auto& fam : families) {
        for (const auto& j : irr) {
            if (std::find(fam.begin(), fam.end(), j) != fam.end()) continue;
            auto ext = fam;
            ext.push_back(j);
            if (is_nested(arr, ext))
                throw std::logic_error("brute_maximal_nested: flag decomposition was extendable");
        }
        out.push_back(make_mns(fam));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace arres
