#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <arres/arrangement.hpp>

namespace arres {

/// Indices into the arrangement; the listing order is significant.
using OrderedBasis = std::vector<int>;

struct Flag {
    std::vector<IndexSubset> levels; // strictly decreasing, each complete
};

/// Maximal nested family of irreducibles. Members are stored sorted by their
/// minimum element (the phi-order), which for proper sets refines reverse
/// inclusion; ties are broken by decreasing size, then lexicographically.
struct MaximalNestedSet {
    std::vector<IndexSubset> members;

    friend bool operator==(const MaximalNestedSet& a, const MaximalNestedSet& b) { return a.members == b.members; }
    friend bool operator<(const MaximalNestedSet& a, const MaximalNestedSet& b) { return a.members < b.members; }
};

struct ProperMns {
    MaximalNestedSet mns;
    OrderedBasis phi; // the minima, a basis, in increasing order
};

struct PhiImage {
    std::vector<int> minima; // one per member, in stored order
    bool is_basis = false;
};

struct EtaResult {
    MaximalNestedSet mns;
    bool proper = false;
    bool input_nbc = false; // properness is only guaranteed when this holds
};

namespace detail {

inline bool subset_contains(const IndexSubset& big, const IndexSubset& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline IndexSubset subset_union(const std::vector<IndexSubset>& parts) {
    std::set<int> u;
    for (const auto& p : parts) u.insert(p.begin(), p.end());
    return IndexSubset(u.begin(), u.end());
}

inline bool nbc_check(const Arrangement& arr, const OrderedBasis& sigma) {
    for (std::size_t l = 0; l < sigma.size(); ++l) {
        IndexSubset tail(sigma.begin() + l, sigma.end());
        std::sort(tail.begin(), tail.end());
        const auto closure = completion(arr, tail);
        if (closure.front() != sigma[l]) return false;
    }
    return true;
}

// Memoized completion/components lookups for the enumeration inner loops.
class NestedScan {
public:
    explicit NestedScan(const Arrangement& arr) : arr_(arr) {}

    const IndexSubset& closure(const IndexSubset& s) {
        auto it = completion_.find(s);
        if (it == completion_.end()) it = completion_.emplace(s, arres::completion(arr_, s)).first;
        return it->second;
    }

    const std::vector<IndexSubset>& components(const IndexSubset& s) {
        auto it = components_.find(s);
        if (it == components_.end())
            it = components_.emplace(s, irreducible_components(arr_, s)).first;
        return it->second;
    }

    /// Given a nested family, decides whether family + {x} stays nested by
    /// checking only the antichains that pass through x.
    bool nested_with(const std::vector<IndexSubset>& family, const IndexSubset& x) {
        std::vector<const IndexSubset*> loose; // members incomparable with x
        for (const auto& s : family) {
            if (subset_contains(s, x) || subset_contains(x, s)) {
                if (s == x) return false;
                continue;
            }
            loose.push_back(&s);
        }
        const std::size_t k = loose.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            std::vector<const IndexSubset*> chosen;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) chosen.push_back(loose[i]);
            bool antichain = true;
            for (std::size_t a = 0; a < chosen.size() && antichain; ++a)
                for (std::size_t b = a + 1; b < chosen.size() && antichain; ++b)
                    if (subset_contains(*chosen[a], *chosen[b]) || subset_contains(*chosen[b], *chosen[a]))
                        antichain = false;
            if (!antichain) continue;
            std::vector<IndexSubset> sub{x};
            for (const auto* p : chosen) sub.push_back(*p);
            const auto u = subset_union(sub);
            if (closure(u) != u) return false;
            auto comps = components(u);
            std::sort(comps.begin(), comps.end());
            std::sort(sub.begin(), sub.end());
            if (comps != sub) return false;
        }
        return true;
    }

private:
    const Arrangement& arr_;
    std::map<IndexSubset, IndexSubset> completion_;
    std::map<IndexSubset, std::vector<IndexSubset>> components_;
};

} // namespace detail

inline MaximalNestedSet make_mns(std::vector<IndexSubset> members) {
    std::sort(members.begin(), members.end(), [](const IndexSubset& a, const IndexSubset& b) {
        if (a.front() != b.front()) return a.front() < b.front();
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return MaximalNestedSet{std::move(members)};
}

/// True iff every position l satisfies sigma_l = min(completion of the tail).
/// Input must be independent and listed in increasing order.
inline bool is_nbc_basis(const Arrangement& arr, const OrderedBasis& sigma) {
    check_subset(arr, sigma); // enforces strictly increasing
    if (rank(gather(arr, sigma)) != static_cast<int>(sigma.size()))
        throw domain_error("is_nbc_basis: dependent input");
    return detail::nbc_check(arr, sigma);
}

/// All no-broken-circuit bases, in lexicographic order. This is the set C.
inline std::vector<OrderedBasis> enumerate_nbc(const Arrangement& arr) {
    const int r = arr.rank, m = arr.size();
    std::vector<OrderedBasis> out;
    OrderedBasis cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            if (rank(gather(arr, cur)) == r && detail::nbc_check(arr, cur)) out.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Levels A_i = completion of {gamma_i, ..., gamma_r}, so A_1 is the whole
/// arrangement whenever sigma spans.
inline Flag flag_of_basis(const Arrangement& arr, const OrderedBasis& sigma) {
    if (rank(gather(arr, sigma)) != static_cast<int>(sigma.size()) ||
        sigma.size() != static_cast<std::size_t>(arr.rank))
        throw domain_error("flag_of_basis: dependent input");
    Flag f;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        IndexSubset tail(sigma.begin() + i, sigma.end());
        std::sort(tail.begin(), tail.end());
        f.levels.push_back(completion(arr, tail));
    }
    return f;
}

/// Union of the irreducible components of all flag levels, de-duplicated.
inline std::vector<IndexSubset> decompose_flag(const Arrangement& arr, const Flag& flag) {
    std::set<IndexSubset> members;
    const IndexSubset* prev = nullptr;
    for (const auto& level : flag.levels) {
        if (!is_complete(arr, level)) throw domain_error("decompose_flag: level is not complete");
        if (prev && !(detail::subset_contains(*prev, level) && level != *prev))
            throw domain_error("decompose_flag: levels not strictly decreasing");
        for (auto& c : irreducible_components(arr, level)) members.insert(std::move(c));
        prev = &level;
    }
    return std::vector<IndexSubset>(members.begin(), members.end());
}

/// Nested per the antichain criterion: any subfamily without mutual
/// inclusions must union to a complete set whose irreducible components are
/// exactly the subfamily.
inline bool is_nested(const Arrangement& arr, const std::vector<IndexSubset>& family) {
    for (const auto& s : family)
        if (!is_irreducible(arr, s)) throw domain_error("is_nested: non-irreducible member");
    std::set<IndexSubset> dedup(family.begin(), family.end());
    const std::vector<IndexSubset> f(dedup.begin(), dedup.end());
    const std::size_t k = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<IndexSubset> sub;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) sub.push_back(f[i]);
        if (sub.size() < 2) continue;
        bool antichain = true;
        for (std::size_t a = 0; a < sub.size() && antichain; ++a)
            for (std::size_t b = 0; b < sub.size() && antichain; ++b)
                if (a != b && detail::subset_contains(sub[a], sub[b])) antichain = false;
        if (!antichain) continue;
        const auto u = detail::subset_union(sub);
        if (!is_complete(arr, u)) return false;
        auto comps = irreducible_components(arr, u);
        std::sort(comps.begin(), comps.end());
        std::sort(sub.begin(), sub.end());
        if (comps != sub) return false;
    }
    return true;
}

/// All maximal (non-extendable) nested families, canonically sorted.
/// Depth-first extension over the irreducibles in decreasing-size order.
inline std::vector<MaximalNestedSet> enumerate_maximal_nested(const Arrangement& arr) {
    auto irr = enumerate_irreducibles(arr);
    std::sort(irr.begin(), irr.end(), [](const IndexSubset& a, const IndexSubset& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    const std::size_t n = irr.size();
    std::vector<MaximalNestedSet> out;
    std::vector<IndexSubset> family;
    detail::NestedScan scan(arr);

    auto rec = [&](auto&& self, std::size_t start) -> void {
        std::vector<std::size_t> extensions;
        bool maximal = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (!scan.nested_with(family, irr[j])) continue;
            maximal = false;
            if (j >= start) extensions.push_back(j);
        }
        if (maximal && !family.empty()) {
            out.push_back(make_mns(family));
            return;
        }
        for (std::size_t j : extensions) {
            family.push_back(irr[j]);
            self(self, j + 1);
            family.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Minima of the members, in stored order; flagged as a basis when they are
/// r distinct independent elements. A repeated minimum signals improperness.
inline PhiImage phi(const Arrangement& arr, const MaximalNestedSet& mns) {
    PhiImage img;
    for (const auto& s : mns.members) img.minima.push_back(s.front());
    auto uniq = img.minima;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    img.is_basis = uniq.size() == img.minima.size() &&
                   img.minima.size() == static_cast<std::size_t>(arr.rank) &&
                   rank(gather(arr, IndexSubset(uniq.begin(), uniq.end()))) == arr.rank;
    return img;
}

inline bool is_proper(const Arrangement& arr, const MaximalNestedSet& mns) { return phi(arr, mns).is_basis; }

/// The nested set associated to a basis: decomposition of its flag. Properness
/// is guaranteed only for no-broken-circuit input; other bases are accepted
/// and flagged.
inline EtaResult eta(const Arrangement& arr, const OrderedBasis& sigma) {
    EtaResult res;
    res.mns = make_mns(decompose_flag(arr, flag_of_basis(arr, sigma)));
    res.proper = is_proper(arr, res.mns);
    res.input_nbc = std::is_sorted(sigma.begin(), sigma.end()) &&
                    std::adjacent_find(sigma.begin(), sigma.end()) == sigma.end() &&
                    detail::nbc_check(arr, sigma);
    return res;
}

/// The inclusion-minimal member containing the given element. Total for
/// maximal nested sets; the members containing an element always form a chain.
inline IndexSubset p_map(const Arrangement& arr, const MaximalNestedSet& mns, int alpha) {
    if (alpha < 0 || alpha >= arr.size()) throw domain_error("p_map: index out of range");
    const IndexSubset* best = nullptr;
    for (const auto& s : mns.members) {
        if (!std::binary_search(s.begin(), s.end(), alpha)) continue;
        if (!best || s.size() < best->size()) best = &s;
    }
    if (!best) throw domain_error("p_map: element not covered; not a maximal nested set");
    return *best;
}

/// Adapted iff p restricted to sigma hits every member exactly once.
inline bool is_adapted(const Arrangement& arr, const OrderedBasis& sigma, const MaximalNestedSet& mns) {
    if (sigma.size() != mns.members.size()) return false;
    std::set<IndexSubset> hit;
    for (int g : sigma) hit.insert(p_map(arr, mns, g));
    return hit.size() == mns.members.size();
}

/// Sign of the permutation (p(gamma_1), ..., p(gamma_r)) of the members in
/// their stored phi-order. Throws when the pair is not adapted.
inline int adaptation_sign(const Arrangement& arr, const OrderedBasis& sigma, const MaximalNestedSet& mns) {
    if (!is_adapted(arr, sigma, mns)) throw domain_error("adaptation_sign: basis not adapted");
    std::vector<int> perm;
    for (int g : sigma) {
        const auto target = p_map(arr, mns, g);
        const auto it = std::find(mns.members.begin(), mns.members.end(), target);
        perm.push_back(static_cast<int>(it - mns.members.begin()));
    }
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

/// The set M of proper maximal nested sets, as the eta-image of the NBC bases
/// (their canonical order). Coincides with filtering the direct enumeration
/// by properness.
inline std::vector<ProperMns> enumerate_proper_mns(const Arrangement& arr) {
    std::vector<ProperMns> out;
    for (const auto& sigma : enumerate_nbc(arr)) {
        auto e = eta(arr, sigma);
        if (!e.proper || phi(arr, e.mns).minima != sigma)
            throw std::logic_error("enumerate_proper_mns: eta image inconsistent with its minima");
        out.push_back(ProperMns{std::move(e.mns), sigma});
    }
    return out;
}

namespace detail {

inline std::vector<int> type_a_support(const std::vector<std::pair<int, int>>& pairs, const IndexSubset& member) {
    std::set<int> sup;
    for (int idx : member) {
        sup.insert(pairs[idx].first);
        sup.insert(pairs[idx].second);
    }
    return std::vector<int>(sup.begin(), sup.end());
}

// The recursive permutation construction: given the support V (sorted) and
// the member supports (V itself included), produce a permutation of V fixing
// max(V), branching on the maximal elements below the top set.
inline void type_a_perm_rec(const std::vector<int>& v, const std::vector<std::vector<int>>& members,
                            std::vector<int>& image_of /* indexed by value */) {
    if (v.size() == 2) {
        image_of[v[0]] = v[0];
        image_of[v[1]] = v[1];
        return;
    }
    std::vector<std::vector<int>> rest;
    for (const auto& s : members)
        if (s != v) rest.push_back(s);
    std::vector<std::vector<int>> maximal;
    for (const auto& s : rest) {
        bool top = true;
        for (const auto& t : rest)
            if (s != t && std::includes(t.begin(), t.end(), s.begin(), s.end())) top = false;
        if (top) maximal.push_back(s);
    }
    auto members_within = [&](const std::vector<int>& part) {
        std::vector<std::vector<int>> sub;
        for (const auto& s : rest)
            if (std::includes(part.begin(), part.end(), s.begin(), s.end())) sub.push_back(s);
        return sub;
    };
    auto reverse_within = [&](const std::vector<int>& part, std::vector<int>& img) {
        // conjugate by the order-reversing involution of part
        std::vector<int> tau(part.rbegin(), part.rend()); // tau[position of x] = reversed value
        std::vector<int> pos(image_of.size(), -1);
        for (std::size_t i = 0; i < part.size(); ++i) pos[part[i]] = static_cast<int>(i);
        std::vector<int> conj = img;
        for (int x : part) conj[x] = tau[pos[img[tau[pos[x]]]]];
        for (int x : part) img[x] = conj[x];
    };

    if (maximal.size() == 1) {
        const auto& s2 = maximal.front();
        const bool has_min = std::binary_search(s2.begin(), s2.end(), v.front());
        const bool has_max = std::binary_search(s2.begin(), s2.end(), v.back());
        if (!has_min && has_max) {
            type_a_perm_rec(s2, rest, image_of);
            image_of[v.front()] = v.front();
        } else if (has_min && !has_max) {
            type_a_perm_rec(s2, rest, image_of);
            reverse_within(s2, image_of);
            image_of[v.back()] = v.back();
        } else {
            throw domain_error("type_a_permutation: nested set is not proper");
        }
    } else if (maximal.size() == 2) {
        auto s2 = maximal[0], s3 = maximal[1];
        if (std::binary_search(s3.begin(), s3.end(), v.front())) std::swap(s2, s3);
        if (!std::binary_search(s2.begin(), s2.end(), v.front()) ||
            !std::binary_search(s3.begin(), s3.end(), v.back()))
            throw domain_error("type_a_permutation: nested set is not proper");
        if (s2.size() + s3.size() != v.size())
            throw domain_error("type_a_permutation: malformed maximal nested set");
        type_a_perm_rec(s3, members_within(s3), image_of);
        type_a_perm_rec(s2, members_within(s2), image_of);
        reverse_within(s2, image_of);
    } else {
        throw domain_error("type_a_permutation: malformed maximal nested set");
    }
}

} // namespace detail

/// (min, max) of each member's support subset of {1..n}, in stored phi-order.
/// Distinct for proper nested sets.
inline std::vector<std::pair<int, int>> type_a_encode(const Arrangement& arr, const MaximalNestedSet& mns) {
    const auto n = type_a_n(arr);
    if (!n) throw domain_error("type_a_encode: arrangement is not a type-A preset");
    const auto pairs = type_a_pairs(*n);
    std::vector<std::pair<int, int>> out;
    for (const auto& s : mns.members) {
        const auto sup = detail::type_a_support(pairs, s);
        out.emplace_back(sup.front(), sup.back());
    }
    return out;
}

/// The recursive permutation construction for a proper maximal nested set of
/// a type-A preset. Returns images of 1..n (1-based); always fixes n.
inline std::vector<int> type_a_permutation(const Arrangement& arr, const MaximalNestedSet& mns) {
    const auto n = type_a_n(arr);
    if (!n) throw domain_error("type_a_permutation: arrangement is not a type-A preset");
    if (!is_proper(arr, mns)) throw domain_error("type_a_permutation: nested set is not proper");
    const auto pairs = type_a_pairs(*n);
    std::vector<std::vector<int>> supports;
    for (const auto& s : mns.members) supports.push_back(detail::type_a_support(pairs, s));
    std::vector<int> full(*n);
    std::iota(full.begin(), full.end(), 1);
    std::vector<int> image_of(*n + 1, -1);
    if (*n == 2) {
        image_of[1] = 1;
        image_of[2] = 2;
    } else {
        detail::type_a_perm_rec(full, supports, image_of);
    }
    std::vector<bool> seen(*n + 1, false);
    for (int x = 1; x <= *n; ++x) {
        if (image_of[x] < 1 || image_of[x] > *n || seen[image_of[x]])
            throw domain_error("type_a_permutation: malformed maximal nested set");
        seen[image_of[x]] = true;
    }
    return std::vector<int>(image_of.begin() + 1, image_of.end());
}

} // namespace arres
