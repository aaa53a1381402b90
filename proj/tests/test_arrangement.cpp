#include <doctest.h>

#include <random>

#include <arres/verify.hpp>

#include "test_util.hpp"

using namespace arres;
using testutil::vec;

namespace {

std::vector<IndexSubset> all_subsets(int m) {
    std::vector<IndexSubset> out;
    for (int mask = 0; mask < (1 << m); ++mask) {
        IndexSubset s;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("validation accepts the running example and rejects bad input") {
    const auto arr = testutil::a2();
    CHECK(arr.rank == 2);
    CHECK(arr.size() == 3);

    CHECK_THROWS_WITH_AS(validate_arrangement({vec({1, 0}), vec({2, 0})}),
                         "arrangement: proportional pair (0,1)", domain_error);
    CHECK_THROWS_WITH_AS(validate_arrangement({vec({1, 0})}),
                         "arrangement: vectors do not span, rank 1 < 2", domain_error);
    CHECK_THROWS_AS(validate_arrangement({vec({0, 0}), vec({1, 0})}), domain_error);
    CHECK_THROWS_AS(validate_arrangement({}), domain_error);
}

TEST_CASE("completion examples") {
    const auto arr = testutil::a2();
    CHECK(completion(arr, {1}) == IndexSubset{1});
    CHECK(completion(arr, {1, 2}) == IndexSubset{0, 1, 2});
    CHECK(completion(arr, {}) == IndexSubset{});
    CHECK(is_complete(arr, {0, 1, 2}));
    CHECK(!is_complete(arr, {1, 2}));
    CHECK(is_complete(arr, {0}));
}

TEST_CASE("completion is a closure operator") {
    auto check_closure = [](const Arrangement& arr) {
        const auto subsets = all_subsets(arr.size());
        for (const auto& s : subsets) {
            const auto cs = completion(arr, s);
            CHECK(std::includes(cs.begin(), cs.end(), s.begin(), s.end())); // extensive
            CHECK(completion(arr, cs) == cs);                               // idempotent
            for (const auto& t : subsets) {                                 // monotone
                if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) continue;
                const auto ct = completion(arr, t);
                CHECK(std::includes(ct.begin(), ct.end(), cs.begin(), cs.end()));
            }
        }
    };
    check_closure(testutil::a2());
    std::mt19937 rng(17);
    for (int i = 0; i < 3; ++i) check_closure(testutil::random_arrangement(3, 6, rng));
}

TEST_CASE("irreducible components examples") {
    const auto arr = testutil::a2();
    CHECK(irreducible_components(arr, {0, 1, 2}) == std::vector<IndexSubset>{{0, 1, 2}});
    CHECK(irreducible_components(arr, {2}) == std::vector<IndexSubset>{{2}});
    CHECK_THROWS_AS(irreducible_components(arr, {1, 2}), domain_error);

    // x1-x2 and x3-x4 split in the n=4 preset
    const auto a3 = type_a_preset(4);
    const auto pairs = type_a_pairs(4);
    int i12 = -1, i34 = -1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i] == std::make_pair(1, 2)) i12 = static_cast<int>(i);
        if (pairs[i] == std::make_pair(3, 4)) i34 = static_cast<int>(i);
    }
    IndexSubset s{std::min(i12, i34), std::max(i12, i34)};
    CHECK(subset_rank(a3, s) == 2);
    const auto comps = irreducible_components(a3, s);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 1);
    CHECK(comps[1].size() == 1);
}

TEST_CASE("irreducibility examples") {
    const auto arr = testutil::a2();
    CHECK(is_irreducible(arr, {0, 1, 2}));
    CHECK(!is_irreducible(arr, {1, 2})); // not complete
    CHECK(is_irreducible(arr, {0}));
    CHECK(!is_irreducible(arr, {}));
}

TEST_CASE("components partition, ranks add up, and lemma restriction holds") {
    std::mt19937 rng(23);
    std::vector<Arrangement> arrs{testutil::a2(), type_a_preset(4)};
    for (int i = 0; i < 3; ++i) arrs.push_back(testutil::random_arrangement(3, 6, rng));
    for (const auto& arr : arrs) {
        for (const auto& s : enumerate_flats(arr)) {
            const auto comps = irreducible_components(arr, s);
            IndexSubset merged;
            int rank_sum = 0;
            for (const auto& c : comps) {
                for (int x : c) merged.push_back(x);
                rank_sum += subset_rank(arr, c);
            }
            std::sort(merged.begin(), merged.end());
            CHECK(merged == s);
            CHECK(rank_sum == subset_rank(arr, s));
            // restriction of a decomposition to a complete subset decomposes it
            if (comps.size() >= 2) {
                for (const auto& a : enumerate_flats(arr)) {
                    if (a.empty() || !std::includes(s.begin(), s.end(), a.begin(), a.end())) continue;
                    int restricted_rank = 0;
                    for (const auto& c : comps) {
                        IndexSubset inter;
                        std::set_intersection(a.begin(), a.end(), c.begin(), c.end(),
                                              std::back_inserter(inter));
                        restricted_rank += subset_rank(arr, inter);
                    }
                    CHECK(restricted_rank == subset_rank(arr, a));
                }
            }
        }
    }
}

TEST_CASE("components agree with the exhaustive bipartition oracle") {
    std::mt19937 rng(29);
    std::vector<Arrangement> arrs{testutil::a2(), type_a_preset(4)};
    for (int i = 0; i < 4; ++i) arrs.push_back(testutil::random_arrangement(3, 7, rng));
    arrs.push_back(testutil::random_arrangement(2, 7, rng));
    for (const auto& arr : arrs) {
        for (const auto& s : enumerate_flats(arr)) {
            if (s.empty()) continue;
            const auto brute = brute_irreducibility(arr, s);
            CHECK(brute.irreducible == is_irreducible(arr, s));
            if (!brute.irreducible) {
                const auto& [s1, s2] = *brute.witness;
                CHECK(subset_rank(arr, s1) + subset_rank(arr, s2) == subset_rank(arr, s));
            }
        }
    }
}

TEST_CASE("enumerate_irreducibles") {
    const auto arr = testutil::a2();
    const std::vector<IndexSubset> expected{{0}, {1}, {2}, {0, 1, 2}};
    CHECK(enumerate_irreducibles(arr) == expected);
    CHECK(enumerate_irreducibles(type_a_preset(3)).size() == 4);
    CHECK(enumerate_irreducibles(type_a_preset(4)).size() == 11);
}

TEST_CASE("type-A preset") {
    const auto a2 = type_a_preset(3);
    CHECK(a2.vectors == testutil::a2().vectors);

    const auto tiny = type_a_preset(2);
    CHECK(tiny.rank == 1);
    CHECK(tiny.vectors == std::vector<Vec>{vec({1})});

    const auto a3 = type_a_preset(4);
    CHECK(a3.size() == 6);
    CHECK(a3.vectors.front() == vec({1, 1, 1}));

    CHECK_THROWS_AS(type_a_preset(1), domain_error);

    CHECK(type_a_n(a3) == 4);
    std::mt19937 rng(31);
    CHECK(!type_a_n(testutil::random_arrangement(2, 4, rng)).has_value());
}
