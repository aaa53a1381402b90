#include <doctest.h>

#include <arres/verify.hpp>

#include "test_util.hpp"

using namespace arres;
using testutil::Q;

namespace {

RationalTopForm form_with(const Arrangement& arr, std::vector<int> den, Poly num) {
    RationalTopForm f = zero_form(arr);
    f.numerator = std::move(num);
    f.den_exps = std::move(den);
    return f;
}

double abs_err(std::complex<double> got, const Rational& expected) {
    return std::abs(got - std::complex<double>(expected.to_double(), 0.0));
}

} // namespace

TEST_CASE("numeric cycle integrals match exact residues on the goldens") {
    const auto arr = testutil::a2();
    const QuadratureSpec spec;
    const auto pm1 = testutil::a2_pm1();
    const auto pm2 = testutil::a2_pm2();

    struct Golden {
        RationalTopForm form;
        const ProperMns* pm;
        Rational expected;
    };
    const auto golden = form_with(arr, {1, 1, 0}, Poly::constant(2, Q(1)));
    std::vector<Golden> cases{
        {golden, &pm1, Q(-1)},
        {form_of_basis(arr, {0, 1}), &pm1, Q(1)},
        {form_of_basis(arr, {0, 2}), &pm1, Q(0)},
        {form_of_basis(arr, {0, 2}), &pm2, Q(1)},
        {form_of_basis(arr, {1, 2}), &pm1, Q(-1)},
        {form_with(arr, {1, 1, 1}, Poly::constant(2, Q(1))), &pm1, Q(0)},
    };
    for (const auto& g : cases) {
        REQUIRE(residue(arr, g.form, *g.pm) == g.expected);
        const auto numeric = numeric_cycle_integral(arr, g.form, *g.pm, spec);
        CHECK(abs_err(numeric, g.expected) < spec.tolerance);
        CHECK(std::abs(numeric.imag()) < spec.tolerance);
    }
}

TEST_CASE("holomorphic pullbacks integrate to zero") {
    const auto arr = testutil::a2();
    // numerator = product of all alphas over the full denominator: plain dx dy
    Poly num = Poly::constant(2, Q(1));
    for (int i = 0; i < arr.size(); ++i) num = num * alpha_form(arr, i);
    const auto psi = form_with(arr, {1, 1, 1}, std::move(num));
    const auto numeric = numeric_cycle_integral(arr, psi, testutil::a2_pm1(), QuadratureSpec{});
    CHECK(std::abs(numeric) < 1e-9);
}

TEST_CASE("quadrature stability in grid size and radius") {
    const auto arr = testutil::a2();
    const auto golden = form_with(arr, {1, 1, 0}, Poly::constant(2, Q(1)));
    const auto pm1 = testutil::a2_pm1();
    QuadratureSpec base;
    QuadratureSpec half_grid;
    half_grid.grid = 32;
    QuadratureSpec half_eps;
    half_eps.epsilon = Q(1, 16);
    const auto v0 = numeric_cycle_integral(arr, golden, pm1, base);
    const auto v1 = numeric_cycle_integral(arr, golden, pm1, half_grid);
    const auto v2 = numeric_cycle_integral(arr, golden, pm1, half_eps);
    CHECK(std::abs(v0 - v1) < base.tolerance);
    CHECK(std::abs(v0 - v2) < base.tolerance);
}

TEST_CASE("epsilon validation rejects radii beyond the unit bound") {
    const auto arr = testutil::a2();
    const auto golden = form_with(arr, {1, 1, 0}, Poly::constant(2, Q(1)));
    QuadratureSpec too_big;
    too_big.epsilon = Q(2); // unit 1 - z2 can vanish on |z| <= 2
    CHECK_THROWS_AS(numeric_cycle_integral(arr, golden, testutil::a2_pm1(), too_big), domain_error);
    QuadratureSpec invalid;
    invalid.epsilon = Q(0);
    CHECK_THROWS_AS(numeric_cycle_integral(arr, golden, testutil::a2_pm1(), invalid), domain_error);
}

TEST_CASE("numeric oracle agrees with the exact engine beyond the running example") {
    // five lines, several with non-unimodular coordinates
    const auto arr = validate_arrangement({testutil::vec({2, 1}), testutil::vec({1, 2}),
                                           testutil::vec({1, 1}), testutil::vec({1, 0}),
                                           testutil::vec({0, 1})});
    const auto props = enumerate_proper_mns(arr);
    REQUIRE(props.size() == 4);
    const QuadratureSpec spec;
    for (const auto& sigma : {OrderedBasis{0, 1}, OrderedBasis{0, 3}, OrderedBasis{2, 4}}) {
        const auto omega = form_of_basis(arr, sigma);
        for (const auto& pm : props) {
            const Rational exact = residue(arr, omega, pm);
            const auto numeric = numeric_cycle_integral(arr, omega, pm, spec);
            CHECK(abs_err(numeric, exact) < spec.tolerance);
        }
    }
}

TEST_CASE("brute irreducibility") {
    const auto arr = testutil::a2();
    CHECK(brute_irreducibility(arr, {0, 1, 2}).irreducible);
    CHECK(brute_irreducibility(arr, {0}).irreducible);
    CHECK_THROWS_AS(brute_irreducibility(arr, {1, 2}), domain_error);

    const auto a3 = type_a_preset(4);
    const auto pairs = type_a_pairs(4);
    int i12 = -1, i34 = -1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i] == std::make_pair(1, 2)) i12 = static_cast<int>(i);
        if (pairs[i] == std::make_pair(3, 4)) i34 = static_cast<int>(i);
    }
    const auto split = brute_irreducibility(a3, {std::min(i12, i34), std::max(i12, i34)});
    REQUIRE(!split.irreducible);
    CHECK(split.witness->first.size() == 1);
    CHECK(split.witness->second.size() == 1);
}

TEST_CASE("brute maximal nested search matches the direct enumerator") {
    CHECK(brute_maximal_nested(testutil::a2()) == enumerate_maximal_nested(testutil::a2()));
    const auto a3 = type_a_preset(4);
    const auto brute = brute_maximal_nested(a3);
    CHECK(brute == enumerate_maximal_nested(a3));
    for (const auto& mns : brute) CHECK(mns.members.size() == 3);
    const auto line = validate_arrangement({testutil::vec({4})});
    CHECK(brute_maximal_nested(line).size() == 1);
}
