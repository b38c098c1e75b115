#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gkm/rational_function.hpp"

using namespace gkm;

namespace {

LinearForm random_form(std::mt19937& rng, int nvars) {
    std::uniform_int_distribution<int> coef(-3, 3);
    for (;;) {
        std::vector<Rational> c(static_cast<size_t>(nvars));
        for (auto& x : c) x = coef(rng);
        LinearForm f{std::move(c)};
        if (!f.is_zero()) return f;
    }
}

Polynomial random_poly(std::mt19937& rng, int nvars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> expo(0, max_deg);
    Polynomial p(nvars);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Exponents e(static_cast<size_t>(nvars));
        int budget = max_deg;
        for (auto& x : e) {
            x = static_cast<unsigned>(std::min(expo(rng), budget));
            budget -= static_cast<int>(x);
        }
        p.add_term(e, coef(rng));
    }
    return p;
}

RationalFunction random_ratfun(std::mt19937& rng, int nvars) {
    std::uniform_int_distribution<int> nden(0, 3);
    std::vector<LinearForm> den;
    int k = nden(rng);
    for (int i = 0; i < k; ++i) den.push_back(random_form(rng, nvars));
    return RationalFunction(random_poly(rng, nvars, 3, 4), den);
}

} // namespace

TEST_CASE("normal form") {
    SECTION("denominator factors become monic, scale moves to the numerator") {
        // 1 / (2*x2) == (1/2) / x2
        RationalFunction r(Polynomial::one(2), {LinearForm({Rational(0), Rational(2)})});
        CHECK(r.num() == Polynomial::constant(2, Rational(1, 2)));
        REQUIRE(r.den().size() == 1);
        CHECK(r.den().begin()->first == LinearForm({Rational(0), Rational(1)}));
        CHECK(r.den().begin()->second == 1);
    }
    SECTION("full cancellation yields a polynomial") {
        // (2*x1*x2) / (2*x2) == x1
        RationalFunction r(Polynomial::parse(2, "2*x1*x2"), {LinearForm({Rational(0), Rational(2)})});
        CHECK(r.is_polynomial());
        CHECK(r.to_polynomial() == Polynomial::variable(2, 0));
    }
    SECTION("partial cancellation respects multiplicity") {
        LinearForm x1({Rational(1), Rational(0)});
        RationalFunction r(Polynomial::parse(2, "x1*x2"), {x1, x1});
        CHECK_FALSE(r.is_polynomial());
        CHECK(r.num() == Polynomial::variable(2, 1));
        CHECK(r.den().at(x1) == 1);
        CHECK_THROWS_AS(r.to_polynomial(), NotPolynomial);
    }
    SECTION("zero clears the denominator") {
        RationalFunction r(Polynomial(2), {LinearForm({Rational(1), Rational(1)})});
        CHECK(r.is_zero());
        CHECK(r.is_polynomial());
        CHECK(r.den().empty());
    }
    SECTION("structural equality equals cross-multiplication equality") {
        std::mt19937 rng(23);
        for (int i = 0; i < 300; ++i) {
            RationalFunction a = random_ratfun(rng, 3);
            RationalFunction b = random_ratfun(rng, 3);
            CHECK((a == b) == a.equals_cross_mult(b));
        }
    }
}

TEST_CASE("field laws through the normal form") {
    std::mt19937 rng(29);
    for (int i = 0; i < 120; ++i) {
        RationalFunction a = random_ratfun(rng, 3);
        RationalFunction b = random_ratfun(rng, 3);
        RationalFunction c = random_ratfun(rng, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a - a == RationalFunction::zero(3));
        LinearForm f = random_form(rng, 3);
        CHECK(a.div_linear(f).mul_linear(f) == a);
    }
}

TEST_CASE("vanishing sum of inverse difference products") {
    // For distinct v_1..v_k, k >= 2:  sum_l prod_{i != l} 1/(v_i - v_l) == 0.
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> ks(2, 6);
    for (int trial = 0; trial < 60; ++trial) {
        int k = ks(rng);
        std::vector<LinearForm> v;
        while (static_cast<int>(v.size()) < k) {
            LinearForm f = random_form(rng, 3);
            bool fresh = true;
            for (const auto& g : v)
                if (g == f) fresh = false;
            if (fresh) v.push_back(f);
        }
        RationalFunction total = RationalFunction::zero(3);
        for (int l = 0; l < k; ++l) {
            RationalFunction term = RationalFunction::one(3);
            for (int i = 0; i < k; ++i) {
                if (i == l) continue;
                LinearForm d = v[static_cast<size_t>(i)] - v[static_cast<size_t>(l)];
                if (d.is_zero()) { // distinct forms may still differ by 0 only if equal
                    FAIL("difference of distinct forms vanished");
                }
                term = term.div_linear(d);
            }
            total = total + term;
        }
        INFO("k = " << k);
        CHECK(total.is_zero());
    }
}

TEST_CASE("printing is stable") {
    LinearForm x1({Rational(1), Rational(0)});
    LinearForm s({Rational(1), Rational(1)});
    RationalFunction r(Polynomial::parse(2, "x2^2 + 1"), {x1, x1, s});
    CHECK(r.to_string() == "(x2^2 + 1) / (x1)^2*(x1 + x2)");
}
