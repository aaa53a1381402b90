#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace arres;
using testutil::Q;
using testutil::vec;

TEST_CASE("rational canonical form and parsing") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, -2).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::parse("6/4") == Q(3, 2));
    CHECK(Rational::parse("-5") == Q(-5));
    CHECK(Rational::parse("0/9") == Q(0));
    CHECK_THROWS_AS(Rational::parse("1/0"), domain_error);
    CHECK_THROWS_AS(Rational::parse("a/b"), domain_error);
    CHECK_THROWS_AS(Q(1) / Q(0), domain_error);
    CHECK(Q(1, 3) + Q(1, 6) == Q(1, 2));
}

TEST_CASE("rank examples") {
    CHECK(rank({}) == 0);
    CHECK(rank({vec({1, 1}), vec({1, 0}), vec({0, 1})}) == 2);
    CHECK(rank({vec({1, 1}), vec({2, 2})}) == 1);
}

TEST_CASE("det examples") {
    CHECK(det(Mat::identity(2)) == Q(1));
    CHECK(det(Mat::from_rows({vec({1, 1}), vec({1, 0})})) == Q(-1));
    CHECK(det(Mat::from_rows({vec({2, 0}), vec({0, 1})})) == Q(2));
    CHECK(det(Mat::from_rows({vec({1, 2}), vec({2, 4})})) == Q(0));
    CHECK_THROWS_AS(det(Mat::from_rows({vec({1, 2, 3})})), domain_error);
    // rational entries
    Mat m(2, 2);
    m.at(0, 0) = Q(1, 2);
    m.at(0, 1) = Q(1, 3);
    m.at(1, 0) = Q(1, 5);
    m.at(1, 1) = Q(1, 7);
    CHECK(det(m) == Q(1, 2) * Q(1, 7) - Q(1, 3) * Q(1, 5));
}

TEST_CASE("solve examples") {
    const Vec b = vec({2, 1});
    CHECK(*solve(Mat::identity(2), b) == b);
    CHECK(*solve(Mat::from_columns({vec({1, 1}), vec({1, 0})}), b) == vec({1, 1}));
    CHECK(*solve(Mat::from_columns({vec({1, 1}), vec({0, 1})}), b) == Vec{Q(2), Q(-1)});
    // inconsistent system
    CHECK(!solve(Mat::from_columns({vec({1, 0})}), vec({1, 1})).has_value());
    // underdetermined: some solution is returned
    const Mat wide = Mat::from_columns({vec({1, 0}), vec({0, 1}), vec({1, 1})});
    const auto x = *solve(wide, b);
    CHECK(mat_vec(wide, x) == b);
}

TEST_CASE("rank invariant under permutation and scaling") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vec> vs;
        const int n = 4, d = 3;
        for (int i = 0; i < n; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = Rational(entry(rng));
            vs.push_back(v);
        }
        const int base = rank(vs);
        auto shuffled = vs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(rank(shuffled) == base);
        auto scaled = vs;
        for (auto& v : scaled)
            for (auto& e : v) e *= Q(-3, 7);
        CHECK(rank(scaled) == base);
    }
}

TEST_CASE("solve recovers the preimage for invertible matrices") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-5, 5);
    int done = 0;
    while (done < 20) {
        const int n = 3;
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Rational(entry(rng));
        if (det(m).is_zero()) continue;
        Vec x(n);
        for (int j = 0; j < n; ++j) x[j] = testutil::random_small_rational(rng);
        CHECK(*solve(m, mat_vec(m, x)) == x);
        ++done;
    }
}

TEST_CASE("rank agrees with an independent rational-elimination oracle") {
    // plain Gauss over the rationals, no fraction-free tricks
    auto oracle_rank = [](std::vector<Vec> rows) {
        std::size_t r = 0;
        const std::size_t n = rows.size(), d = n ? rows[0].size() : 0;
        for (std::size_t c = 0; c < d && r < n; ++c) {
            std::size_t p = r;
            while (p < n && rows[p][c].is_zero()) ++p;
            if (p == n) continue;
            std::swap(rows[p], rows[r]);
            for (std::size_t i = r + 1; i < n; ++i) {
                if (rows[i][c].is_zero()) continue;
                const Rational f = rows[i][c] / rows[r][c];
                for (std::size_t j = c; j < d; ++j) rows[i][j] -= f * rows[r][j];
            }
            ++r;
        }
        return static_cast<int>(r);
    };
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = size(rng), d = size(rng);
        std::vector<Vec> vs;
        for (int i = 0; i < n; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = Rational(entry(rng));
            vs.push_back(v);
        }
        CHECK(rank(vs) == oracle_rank(vs));
    }
}
