#include <doctest.h>

#include <random>

#include "gcad/realalg.hpp"

using namespace gcad;

namespace {

UPoly upoly_of(const std::string& text) {
    auto v = make_vars({"x"});
    return to_upoly(parse_poly(v, text), 0);
}

}  // namespace

TEST_CASE("real root isolation") {
    auto r1 = isolate_roots(upoly_of("9*x^2 - 4*x - 4"));  // (2 +- 2 sqrt(10)) / 9
    REQUIRE(r1.size() == 2);
    CHECK(compare(r1[0], r1[1]) < 0);
    CHECK(sign(r1[0].hi()) < 1);  // negative root
    CHECK(sign(r1[1].lo()) >= 0);
    // 2 - 2 sqrt(10) in (-4.33, -4.32) scaled by 1/9
    CHECK(compare(r1[0], RealAlgebraicNumber::from_rational(rat(-12, 25))) < 0);
    CHECK(compare(r1[0], RealAlgebraicNumber::from_rational(rat(-1, 2))) > 0);
    CHECK(compare(r1[1], RealAlgebraicNumber::from_rational(rat(9, 10))) > 0);
    CHECK(compare(r1[1], RealAlgebraicNumber::from_rational(Rational(1))) < 0);

    CHECK(isolate_roots(upoly_of("104*x^2 + 44*x + 5")).empty());

    auto r3 = isolate_roots(upoly_of("x^3"));
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].is_rational());
    CHECK(r3[0].rational_value() == 0);

    auto r4 = isolate_roots(upoly_of("(x^2 - 2) * (x - 1) * (2*x - 7)"));
    REQUIRE(r4.size() == 4);  // -sqrt2, 1, sqrt2, 7/2
    CHECK(r4[1].is_rational());
    CHECK(r4[1].rational_value() == 1);
    CHECK(r4[3].rational_value() == rat(7, 2));
    CHECK(sign_at(upoly_of("x^2 - 2"), r4[0]) == 0);
    CHECK(sign_at(upoly_of("x^2 - 2"), r4[2]) == 0);
}

TEST_CASE("sign determination and comparison") {
    auto sqrt2 = isolate_roots(upoly_of("x^2 - 2"))[1];
    CHECK(!sqrt2.is_rational());
    CHECK(sign_at(upoly_of("x"), RealAlgebraicNumber::from_rational(Rational(0))) == 0);
    CHECK(sign_at(upoly_of("x^2 - 2"), sqrt2) == 0);
    CHECK(sign_at(upoly_of("x^3 - 3"), sqrt2) == -1);  // 2 sqrt 2 < 3
    CHECK(sign_at(upoly_of("x^3 - 2"), sqrt2) == 1);
    CHECK(sign_at(upoly_of("x - 2"), sqrt2) == -1);

    CHECK(compare(sqrt2, RealAlgebraicNumber::from_rational(rat(3, 2))) < 0);
    CHECK(compare(sqrt2, sqrt2) == 0);
    RealAlgebraicNumber other(upoly_of("x^4 - 4"), Rational(1), Rational(2));
    CHECK(compare(sqrt2, other) == 0);
    RealAlgebraicNumber sqrt3(upoly_of("x^2 - 3"), Rational(1), Rational(2));
    CHECK(compare(sqrt2, sqrt3) < 0);
    CHECK(compare(sqrt3, sqrt2) > 0);
}

TEST_CASE("sturm oracle") {
    CHECK(sturm_count(upoly_of("x^2 - 2")) == 2);
    CHECK(sturm_count(upoly_of("x^2 + 1")) == 0);
    CHECK(sturm_count(upoly_of("x^3 - x")) == 3);
    CHECK(sturm_count(upoly_of("x^2 - 2"), Rational(0), Rational(2)) == 1);
    CHECK(sturm_count(upoly_of("(x - 1)^2 * (x - 2)")) == 2);  // distinct roots
}

TEST_CASE("roots at a sample point") {
    auto vy = make_vars({"y", "x"});

    auto a = roots_at_sample(parse_poly(vy, "x^2 - y"),
                             {RealAlgebraicNumber::from_rational(Rational(2))});
    REQUIRE(!a.identically_zero);
    REQUIRE(a.roots.size() == 2);
    auto sqrt2 = isolate_roots(upoly_of("x^2 - 2"));
    CHECK(compare(a.roots[0], sqrt2[0]) == 0);
    CHECK(compare(a.roots[1], sqrt2[1]) == 0);

    auto vpq = make_vars({"p", "q", "x"});
    auto b = roots_at_sample(parse_poly(vpq, "x^3 + p*x + q"),
                             {RealAlgebraicNumber::from_rational(Rational(-1)),
                              RealAlgebraicNumber::from_rational(Rational(0))});
    REQUIRE(b.roots.size() == 3);
    CHECK(b.roots[0].rational_value() == -1);
    CHECK(b.roots[1].rational_value() == 0);
    CHECK(b.roots[2].rational_value() == 1);

    // algebraic sample: x^2 - y at y = sqrt(2) -> +-2^(1/4)
    auto c = roots_at_sample(parse_poly(vy, "x^2 - y"), {sqrt2[1]});
    REQUIRE(c.roots.size() == 2);
    auto quartic = isolate_roots(upoly_of("x^4 - 2"));
    REQUIRE(quartic.size() == 2);
    CHECK(compare(c.roots[0], quartic[0]) == 0);
    CHECK(compare(c.roots[1], quartic[1]) == 0);

    // tangency: x^2 - 2 sqrt(2) x + 2 = (x - sqrt 2)^2 at y = sqrt 2 via
    // p = x^2 - 2*y*x + 2, no sign change across the double root
    auto d = roots_at_sample(parse_poly(vy, "x^2 - 2*y*x + 2"), {sqrt2[1]});
    REQUIRE(d.roots.size() == 1);
    CHECK(compare(d.roots[0], sqrt2[1]) == 0);

    // identically-zero specialization
    auto e = roots_at_sample(parse_poly(vy, "(y - 1) * x^2 + (2*y - 2)"),
                             {RealAlgebraicNumber::from_rational(Rational(1))});
    CHECK(e.identically_zero);
    auto e2 = roots_at_sample(parse_poly(vy, "(y^2 - 2) * x + y^2 - 2"), {sqrt2[1]});
    CHECK(e2.identically_zero);
}

TEST_CASE("sign at algebraic points") {
    auto sqrt2 = isolate_roots(upoly_of("x^2 - 2"))[1];
    auto sqrt3 = isolate_roots(upoly_of("x^2 - 3"))[1];
    auto v = make_vars({"a", "b"});
    CHECK(sign_at_point(parse_poly(v, "a*b"), {sqrt2, sqrt3}) == 1);
    CHECK(sign_at_point(parse_poly(v, "a^2 - 2"), {sqrt2, sqrt3}) == 0);
    CHECK(sign_at_point(parse_poly(v, "a^2*b^2 - 6"), {sqrt2, sqrt3}) == 0);
    CHECK(sign_at_point(parse_poly(v, "a + b - 4"), {sqrt2, sqrt3}) == -1);
    CHECK(sign_at_point(parse_poly(v, "a + b - 3"), {sqrt2, sqrt3}) == 1);
    CHECK(sign_at_point(parse_poly(v, "a - b"), {sqrt2, sqrt3}) == -1);
    CHECK(sign_at_point(parse_poly(v, "(a - b)^2 - 5 + 2*a*b"), {sqrt2, sqrt3}) == 0);
}

TEST_CASE("partition of the line") {
    auto vp = make_vars({"p"});
    auto cells = partition1d({parse_poly(vp, "p"), parse_poly(vp, "9 - 3*p + 4*p^2")});
    REQUIRE(cells.size() == 3);
    CHECK(!cells[0].is_point);
    CHECK(cells[0].sample < 0);
    CHECK(cells[1].is_point);
    CHECK(cells[1].point.rational_value() == 0);
    CHECK(!cells[2].is_point);
    CHECK(cells[2].sample > 0);

    auto vx = make_vars({"x"});
    auto cells2 = partition1d(
        {parse_poly(vx, "9*x^2 - 4*x - 4"), parse_poly(vx, "104*x^2 + 44*x + 5")});
    REQUIRE(cells2.size() == 5);
    CHECK((!cells2[0].is_point && cells2[1].is_point && !cells2[2].is_point &&
           cells2[3].is_point && !cells2[4].is_point));
    // samples strictly interleave the two points
    CHECK(compare(RealAlgebraicNumber::from_rational(cells2[0].sample), cells2[1].point) < 0);
    CHECK(compare(RealAlgebraicNumber::from_rational(cells2[2].sample), cells2[1].point) > 0);
    CHECK(compare(RealAlgebraicNumber::from_rational(cells2[2].sample), cells2[3].point) < 0);
    CHECK(compare(RealAlgebraicNumber::from_rational(cells2[4].sample), cells2[3].point) > 0);

    CHECK(partition1d({}).size() == 1);
}

TEST_CASE("refinement budget") {
    std::size_t saved = refine_limit();
    set_refine_limit(8);
    auto a = isolate_roots(upoly_of("x^2 - 2"))[1];
    RealAlgebraicNumber b(upoly_of("40000*x^2 - 79999"), Rational(1), Rational(2));
    CHECK_THROWS_AS((void)compare(a, b), BudgetError);
    set_refine_limit(saved);
    CHECK(compare(a, b) > 0);  // sqrt 2 > sqrt 1.999975
}

TEST_CASE("isolation agrees with the Sturm oracle (randomized)") {
    std::mt19937 rng(24680);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int k = 0; k < 500; ++k) {
        int d = deg(rng);
        std::vector<Rational> c(d + 1);
        for (auto& x : c) x = Rational(coeff(rng));
        if (sign(c.back()) == 0) c.back() = Rational(1);
        UPoly p(std::move(c));
        auto roots = isolate_roots(p);
        CHECK(roots.size() == sturm_count(usquarefree(p)));
        for (std::size_t i = 0; i + 1 < roots.size(); ++i)
            CHECK(compare(roots[i], roots[i + 1]) < 0);
        for (auto& r : roots) CHECK(sign_at(p, r) == 0);
    }
}

TEST_CASE("sign soundness against high-precision evaluation (randomized)") {
    std::mt19937 rng(11223);
    std::uniform_int_distribution<int> coeff(-9, 9);
    Integer tiny(10);
    mpz_pow_ui(tiny.get_mpz_t(), tiny.get_mpz_t(), 30);
    Rational width(Integer(1), tiny);
    int checked = 0;
    for (int k = 0; k < 60 && checked < 40; ++k) {
        std::vector<Rational> c(5), qc(4);
        for (auto& x : c) x = Rational(coeff(rng));
        for (auto& x : qc) x = Rational(coeff(rng));
        UPoly p(std::move(c)), q(std::move(qc));
        if (p.degree() < 1 || q.is_zero()) continue;
        for (auto& r : isolate_roots(p)) {
            int s = sign_at(q, r);
            if (s == 0) {
                CHECK(ugcd(q, r.defining()).degree() >= 1);
            } else {
                r.refine_below(width);
                CHECK(s == sign(q.eval(r.mid())));
            }
            ++checked;
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("roots_at_sample matches direct substitution (randomized)") {
    std::mt19937 rng(55667);
    std::uniform_int_distribution<int> coeff(-5, 5);
    auto v = make_vars({"y", "x"});
    for (int k = 0; k < 120; ++k) {
        // random p(y, x) of x-degree <= 3, y-degree <= 2
        Polynomial p = Polynomial::zero(v);
        for (unsigned i = 0; i <= 2; ++i)
            for (unsigned j = 0; j <= 3; ++j) {
                Monomial m(2);
                m.e[0] = i;
                m.e[1] = j;
                p.add_term(m, Rational(coeff(rng)));
            }
        Rational y0(coeff(rng), 1 + (k % 3));
        Polynomial spec = p.subst(0, y0);
        if (spec.is_zero()) continue;
        auto got = roots_at_sample(p, {RealAlgebraicNumber::from_rational(y0)});
        REQUIRE(!got.identically_zero);
        if (spec.is_constant()) {
            CHECK(got.roots.empty());
            continue;
        }
        auto want = isolate_roots(to_upoly(spec, 1));
        REQUIRE(got.roots.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(compare(got.roots[i], want[i]) == 0);
    }
}
