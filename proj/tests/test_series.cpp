#include <doctest.h>

#include <random>

#include <arres/poly.hpp>
#include <arres/series.hpp>

#include "test_util.hpp"

using namespace arres;
using testutil::Q;

namespace {

TruncatedSeries random_series(int nvars, const std::vector<int>& caps, std::mt19937& rng, bool unit) {
    TruncatedSeries s(nvars, caps);
    std::uniform_int_distribution<int> coin(0, 2);
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == nvars) {
            const bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            if (constant && unit) {
                Rational c = testutil::random_small_rational(rng);
                while (c.is_zero()) c = testutil::random_small_rational(rng);
                s.add_term(e, c);
            } else if (coin(rng) == 0) {
                s.add_term(e, testutil::random_small_rational(rng));
            }
            return;
        }
        for (e[v] = 0; e[v] <= caps[v]; ++e[v]) self(self, v + 1);
        e[v] = 0;
    };
    rec(rec, 0);
    return s;
}

} // namespace

TEST_CASE("series multiplication basics") {
    const std::vector<int> caps{3};
    auto one_plus_z = TruncatedSeries::constant(1, caps, Q(1));
    one_plus_z.add_term({1}, Q(1));
    auto one_minus_z = TruncatedSeries::constant(1, caps, Q(1));
    one_minus_z.add_term({1}, Q(-1));
    const auto prod = one_plus_z * one_minus_z;
    CHECK(prod.coefficient({0}) == Q(1));
    CHECK(prod.coefficient({1}) == Q(0));
    CHECK(prod.coefficient({2}) == Q(-1));

    // Laurent shift cancellation
    const auto zinv = TruncatedSeries::monomial(1, caps, {-1}, Q(1));
    const auto z = TruncatedSeries::monomial(1, caps, {1}, Q(1));
    const auto unit = zinv * z;
    CHECK(unit.coefficient({0}) == Q(1));
    CHECK(unit.terms().size() == 1);

    // bivariate with caps (1,1)
    const std::vector<int> caps2{1, 1};
    auto a = TruncatedSeries::constant(2, caps2, Q(1));
    a.add_term({0, 1}, Q(1));
    auto b = TruncatedSeries::constant(2, caps2, Q(1));
    b.add_term({1, 0}, Q(1));
    const auto ab = a * b;
    CHECK(ab.coefficient({0, 0}) == Q(1));
    CHECK(ab.coefficient({1, 0}) == Q(1));
    CHECK(ab.coefficient({0, 1}) == Q(1));
    CHECK(ab.coefficient({1, 1}) == Q(1));

    CHECK_THROWS_AS(a * one_plus_z, domain_error); // variable mismatch
}

TEST_CASE("unit inversion") {
    auto geom = TruncatedSeries::constant(1, {3}, Q(1));
    geom.add_term({1}, Q(-1));
    const auto inv = geom.invert_unit();
    for (int k = 0; k <= 3; ++k) CHECK(inv.coefficient({k}) == Q(1));

    auto two_plus_z = TruncatedSeries::constant(1, {2}, Q(2));
    two_plus_z.add_term({1}, Q(1));
    const auto inv2 = two_plus_z.invert_unit();
    CHECK(inv2.coefficient({0}) == Q(1, 2));
    CHECK(inv2.coefficient({1}) == Q(-1, 4));
    CHECK(inv2.coefficient({2}) == Q(1, 8));

    CHECK(TruncatedSeries::constant(1, {2}, Q(1)).invert_unit().coefficient({0}) == Q(1));
    CHECK_THROWS_AS(TruncatedSeries::monomial(1, {2}, {1}, Q(1)).invert_unit(), domain_error);
}

TEST_CASE("coefficient window") {
    auto s = TruncatedSeries::constant(1, {1}, Q(1));
    s.add_term({1}, Q(3));
    CHECK(s.coefficient({1}) == Q(3));

    const auto shifted = TruncatedSeries::monomial(2, {1, 1}, {-1, -1}, Q(1)) *
                         [] {
                             auto t = TruncatedSeries::constant(2, {1, 1}, Q(1));
                             t.add_term({0, 1}, Q(1));
                             return t;
                         }();
    CHECK(shifted.coefficient({-1, -1}) == Q(1));
    CHECK(shifted.coefficient({-1, 0}) == Q(1));

    const auto lone = TruncatedSeries::monomial(2, {1, 0}, {-2, 0}, Q(5));
    CHECK(lone.coefficient({-1, 0}) == Q(0)); // no such term, inside the window
    CHECK_THROWS_AS(lone.coefficient({-3, 0}), domain_error);
    CHECK_THROWS_AS(lone.coefficient({0, 0}), domain_error); // beyond the cap
}

TEST_CASE("ring identities up to truncation") {
    std::mt19937 rng(43);
    const std::vector<int> caps{2, 2};
    for (int trial = 0; trial < 15; ++trial) {
        const auto a = random_series(2, caps, rng, false);
        const auto b = random_series(2, caps, rng, false);
        const auto c = random_series(2, caps, rng, false);
        const auto left = (a * b) * c;
        const auto right = a * (b * c);
        std::vector<int> e(2);
        for (e[0] = 0; e[0] <= 2; ++e[0])
            for (e[1] = 0; e[1] <= 2; ++e[1]) {
                CHECK(left.coefficient(e) == right.coefficient(e));
                CHECK((a * (b + c)).coefficient(e) == (a * b + a * c).coefficient(e));
            }
    }
}

TEST_CASE("inverse really inverts within the caps") {
    std::mt19937 rng(47);
    const std::vector<int> caps{2, 3};
    for (int trial = 0; trial < 15; ++trial) {
        const auto u = random_series(2, caps, rng, true);
        const auto prod = u * u.invert_unit();
        CHECK(prod.coefficient({0, 0}) == Q(1));
        CHECK(prod.terms().size() == 1);
    }
}

TEST_CASE("truncation soundness: lower caps are a restriction of higher ones") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a_hi = random_series(2, {4, 4}, rng, true);
        const auto b_hi = random_series(2, {4, 4}, rng, false);
        // rebuild the same series with smaller caps
        auto rebuild = [&](const TruncatedSeries& s) {
            TruncatedSeries t(2, {2, 2});
            for (const auto& [e, c] : s.terms()) t.add_term(e, c);
            return t;
        };
        const auto a_lo = rebuild(a_hi), b_lo = rebuild(b_hi);
        const auto prod_hi = a_hi * b_hi;
        const auto prod_lo = a_lo * b_lo;
        const auto inv_hi = a_hi.invert_unit();
        const auto inv_lo = a_lo.invert_unit();
        std::vector<int> e(2);
        for (e[0] = 0; e[0] <= 2; ++e[0])
            for (e[1] = 0; e[1] <= 2; ++e[1]) {
                CHECK(prod_hi.coefficient(e) == prod_lo.coefficient(e));
                CHECK(inv_hi.coefficient(e) == inv_lo.coefficient(e));
            }
    }
}

TEST_CASE("series dump is sorted and stable") {
    auto s = TruncatedSeries::monomial(2, {1, 1}, {-1, 0}, Q(1, 2));
    s.add_term({1, 1}, Q(-3));
    CHECK(s.dump() == "1/2 * z^(-1,0)\n-3 * z^(0,1)\n");
}

TEST_CASE("polynomial arithmetic used by the residue engine") {
    // (x0 + 2 x1)^2 = x0^2 + 4 x0 x1 + 4 x1^2
    const auto lin = Poly::linear({Q(1), Q(2)});
    const auto sq = lin.pow(2);
    CHECK(sq.terms().at({2, 0}) == Q(1));
    CHECK(sq.terms().at({1, 1}) == Q(4));
    CHECK(sq.terms().at({0, 2}) == Q(4));
    CHECK(sq.derivative(0) == Poly::linear({Q(2), Q(4)}));
    CHECK(sq.eval(Vec{Q(1), Q(1)}) == Q(9));

    // composing x0 -> y0 + y1, x1 -> y0 - y1 in x0 * x1 gives y0^2 - y1^2
    const auto prod = Poly::monomial(2, {1, 1}, Q(1));
    const auto composed = prod.compose({Poly::linear({Q(1), Q(1)}), Poly::linear({Q(1), Q(-1)})});
    CHECK(composed.terms().at({2, 0}) == Q(1));
    CHECK(composed.terms().at({0, 2}) == Q(-1));
    CHECK(composed.terms().count({1, 1}) == 0);
}
