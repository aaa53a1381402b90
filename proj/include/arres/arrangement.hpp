#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <arres/linalg.hpp>

namespace arres {

/// Subset of arrangement indices, kept strictly increasing.
using IndexSubset = std::vector<int>;

/// A central hyperplane arrangement: an ordered list of nonzero, pairwise
/// non-proportional rational vectors spanning the whole rank-r space. The
/// list order is the total order used by every combinatorial construction.
struct Arrangement {
    std::vector<Vec> vectors;
    int rank = 0;

    int size() const { return static_cast<int>(vectors.size()); }
};

inline Arrangement validate_arrangement(std::vector<Vec> raw) {
    if (raw.empty()) throw domain_error("arrangement: empty vector list");
    const std::size_t r = raw.front().size();
    if (r == 0) throw domain_error("arrangement: zero-dimensional vectors");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != r) throw domain_error("arrangement: vector " + std::to_string(i) + " has wrong length");
        bool zero = true;
        for (const auto& e : raw[i]) zero = zero && e.is_zero();
        if (zero) throw domain_error("arrangement: vector " + std::to_string(i) + " is zero");
    }
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (rank({raw[i], raw[j]}) < 2)
                throw domain_error("arrangement: proportional pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    const int got = rank(raw);
    if (got != static_cast<int>(r))
        throw domain_error("arrangement: vectors do not span, rank " + std::to_string(got) + " < " + std::to_string(r));
    return Arrangement{std::move(raw), static_cast<int>(r)};
}

inline void check_subset(const Arrangement& arr, const IndexSubset& s) {
    int prev = -1;
    for (int i : s) {
        if (i <= prev) throw domain_error("subset: indices must be strictly increasing");
        if (i < 0 || i >= arr.size()) throw domain_error("subset: index out of range");
        prev = i;
    }
}

inline std::vector<Vec> gather(const Arrangement& arr, const IndexSubset& s) {
    std::vector<Vec> vs;
    vs.reserve(s.size());
    for (int i : s) vs.push_back(arr.vectors[i]);
    return vs;
}

inline int subset_rank(const Arrangement& arr, const IndexSubset& s) { return rank(gather(arr, s)); }

/// Completion: every element of the arrangement lying in the span of s.
inline IndexSubset completion(const Arrangement& arr, const IndexSubset& s) {
    check_subset(arr, s);
    const auto vs = gather(arr, s);
    IndexSubset out;
    for (int i = 0; i < arr.size(); ++i)
        if (in_span(vs, arr.vectors[i])) out.push_back(i);
    return out;
}

inline bool is_complete(const Arrangement& arr, const IndexSubset& s) { return completion(arr, s) == s; }

/// Irreducible components of a complete subset: the connected components of
/// the restricted vector matroid. Computed from the fundamental circuits of a
/// greedy basis: e and b share a circuit iff b carries a nonzero coefficient
/// in the expansion of e over the basis; components are the connected parts
/// of that incidence graph.
inline std::vector<IndexSubset> irreducible_components(const Arrangement& arr, const IndexSubset& s) {
    if (!is_complete(arr, s)) throw domain_error("irreducible_components: subset is not complete");
    const int k = static_cast<int>(s.size());
    if (k == 0) return {};

    std::vector<int> basis_pos; // positions within s forming a greedy basis
    std::vector<Vec> basis_vecs;
    for (int p = 0; p < k; ++p) {
        auto cand = basis_vecs;
        cand.push_back(arr.vectors[s[p]]);
        if (rank(cand) > static_cast<int>(basis_vecs.size())) {
            basis_vecs = std::move(cand);
            basis_pos.push_back(p);
        }
    }

    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    const Mat basis_cols = Mat::from_columns(basis_vecs);
    for (int p = 0; p < k; ++p) {
        if (std::find(basis_pos.begin(), basis_pos.end(), p) != basis_pos.end()) continue;
        const auto coeffs = solve(basis_cols, arr.vectors[s[p]]);
        if (!coeffs) throw domain_error("irreducible_components: internal span inconsistency");
        for (std::size_t t = 0; t < coeffs->size(); ++t)
            if (!(*coeffs)[t].is_zero()) unite(p, basis_pos[t]);
    }

    std::vector<IndexSubset> blocks(k);
    for (int p = 0; p < k; ++p) blocks[find(p)].push_back(s[p]);
    std::vector<IndexSubset> out;
    for (auto& b : blocks)
        if (!b.empty()) out.push_back(std::move(b));
    std::sort(out.begin(), out.end(), [](const IndexSubset& a, const IndexSubset& b) { return a.front() < b.front(); });
    return out;
}

inline bool is_irreducible(const Arrangement& arr, const IndexSubset& s) {
    if (!is_complete(arr, s)) return false;
    if (s.empty()) return false;
    return irreducible_components(arr, s).size() == 1;
}

/// All complete subsets (flats), empty set included, ordered by (size, lex).
inline std::vector<IndexSubset> enumerate_flats(const Arrangement& arr) {
    std::set<IndexSubset> seen;
    std::vector<IndexSubset> frontier{IndexSubset{}};
    seen.insert(IndexSubset{});
    while (!frontier.empty()) {
        std::vector<IndexSubset> next;
        for (const auto& f : frontier) {
            for (int i = 0; i < arr.size(); ++i) {
                if (std::binary_search(f.begin(), f.end(), i)) continue;
                auto ext = f;
                ext.insert(std::lower_bound(ext.begin(), ext.end(), i), i);
                auto closure = completion(arr, ext);
                if (seen.insert(closure).second) next.push_back(std::move(closure));
            }
        }
        frontier = std::move(next);
    }
    std::vector<IndexSubset> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const IndexSubset& a, const IndexSubset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

/// The family of all irreducible subsets, ordered by (size, lex).
inline std::vector<IndexSubset> enumerate_irreducibles(const Arrangement& arr) {
    std::vector<IndexSubset> out;
    for (const auto& f : enumerate_flats(arr)) {
        if (f.empty()) continue;
        if (irreducible_components(arr, f).size() == 1) out.push_back(f);
    }
    return out;
}

/// Positive-root pairs (i, j), 1-based, in the preset order: longer roots
/// x_i - x_j first (j - i descending), ties by i ascending.
inline std::vector<std::pair<int, int>> type_a_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int len = n - 1; len >= 1; --len)
        for (int i = 1; i + len <= n; ++i) pairs.emplace_back(i, i + len);
    return pairs;
}

/// The A_{n-1} root arrangement in simple-root coordinates:
/// x_i - x_j = e_i + ... + e_{j-1}.
inline Arrangement type_a_preset(int n) {
    if (n < 2) throw domain_error("type_a_preset: n must be at least 2");
    const int r = n - 1;
    std::vector<Vec> vecs;
    for (const auto& [i, j] : type_a_pairs(n)) {
        Vec v(r);
        for (int t = i; t < j; ++t) v[t - 1] = Rational(1);
        vecs.push_back(std::move(v));
    }
    return Arrangement{std::move(vecs), r};
}

/// Recognizes an arrangement produced by type_a_preset; returns its n.
inline std::optional<int> type_a_n(const Arrangement& arr) {
    const int n = arr.rank + 1;
    if (n < 2) return std::nullopt;
    if (arr.size() != n * (n - 1) / 2) return std::nullopt;
    const auto preset = type_a_preset(n);
    if (preset.vectors != arr.vectors) return std::nullopt;
    return n;
}

} // namespace arres
