#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gcad/cadproject.hpp"
#include "gcad/fiberclass.hpp"
#include "gcad/realalg.hpp"

using namespace gcad;

namespace {

bool bcs_contains(const BasicConstructibleSet& s, const std::vector<Rational>& pt) {
    for (auto& g : s.I.gens)
        if (sign(g.eval(pt)) != 0) return false;
    return sign(s.h.eval(pt)) != 0;
}

std::multiset<std::string> key_multiset(const std::vector<BasicConstructibleSet>& sets) {
    std::multiset<std::string> keys;
    for (auto& s : sets) keys.insert(s.canonical_key());
    return keys;
}

}  // namespace

TEST_CASE("proj1 of the depressed cubic") {
    auto v = make_vars({"p", "q", "x"});
    Ideal I(v, {parse_poly(v, "x^3 + p*x + q")});
    auto sets = proj1(I, Ideal::zero(v), Polynomial::constant(v, Rational(1)), 2);
    REQUIRE(sets.size() == 3);
    auto y = sets[0].I.vars;

    Polynomial c0 = parse_poly(y, "4*p^3 + 27*q^2");
    Polynomial c1 = parse_poly(y, "6*p - 2*p^2 + 4*p^3 + 9*q^2");

    CHECK(sets[0].I.trivially_zero());
    CHECK(sets[0].h == c0.canonicalized());

    CHECK(ideal_equal(sets[1].I, Ideal(y, {c0})));
    CHECK(sets[1].h == c1.canonicalized());

    // the remaining coefficients cannot vanish together: closed stratum
    CHECK(ideal_equal(sets[2].I, Ideal(y, {c0, c1})));
    CHECK(sets[2].h == Polynomial::constant(y, Rational(1)));

    for (auto& s : sets) CHECK(s.certified);
}

TEST_CASE("proj1 of the cubic discriminant locus") {
    // second projection stage of the cubic: base is the p-line
    auto v = make_vars({"p", "q"});
    Ideal I(v, {parse_poly(v, "4*p^3 + 27*q^2")});
    Polynomial h = parse_poly(v, "6*p - 2*p^2 + 4*p^3 + 9*q^2");
    auto sets = proj1(I, Ideal::zero(v), h, 1);
    REQUIRE(sets.size() == 3);
    auto y = sets[0].I.vars;

    Polynomial u = parse_poly(y, "9 - 3*p + 4*p^2");
    Polynomial e0 = (parse_poly(y, "p").pow(5) * u * u).canonicalized();
    Polynomial e1 =
        (parse_poly(y, "p") * u * parse_poly(y, "4*p^3 - 27")).canonicalized();

    CHECK(sets[0].I.trivially_zero());
    CHECK(sets[0].h == e0);
    CHECK(ideal_equal(sets[1].I, Ideal(y, {e0})));
    CHECK(sets[1].h == e1);
    CHECK(ideal_equal(sets[2].I, Ideal(y, {e0, e1})));
    CHECK(sets[2].h == Polynomial::constant(y, Rational(1)));
}

TEST_CASE("proj1 of the unit ideal returns the base") {
    auto v = make_vars({"p", "q", "x"});
    Ideal J(v, {parse_poly(v, "p")});
    auto sets = proj1(Ideal::one(v), J, Polynomial::constant(v, Rational(1)), 2);
    REQUIRE(sets.size() == 1);
    auto y = sets[0].I.vars;
    CHECK(ideal_equal(sets[0].I, Ideal(y, {parse_poly(y, "p")})));
    CHECK(sets[0].h == Polynomial::constant(y, Rational(1)));
}

TEST_CASE("proj2sub basic descriptors") {
    auto v = make_vars({"y", "x"});
    Polynomial one = Polynomial::constant(v, Rational(1));

    // parabola over the line: generically free with trivial witness
    auto sets = proj2sub(Ideal(v, {parse_poly(v, "x^2 - y")}), Ideal::zero(v), one, one, 1);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].I.trivially_zero());
    CHECK(sets[0].h.is_constant());
    CHECK(sign(sets[0].h.constant_value()) != 0);

    // inconsistent fiber system: empty output
    CHECK(proj2sub(Ideal(v, {parse_poly(v, "x"), parse_poly(v, "x - 1")}), Ideal::zero(v),
                   one, one, 1)
              .empty());

    // parabola meets the section x = 0 only over y = 0: the contraction of
    // <x^2 - y, x> is <y>, so the dominance shrink recurses before emitting
    auto meet =
        proj2sub(Ideal(v, {parse_poly(v, "x^2 - y"), parse_poly(v, "x")}), Ideal::zero(v),
                 one, one, 1);
    REQUIRE(meet.size() == 1);
    auto y = meet[0].I.vars;
    CHECK(ideal_equal(meet[0].I, Ideal(y, {parse_poly(y, "y")})));
    CHECK(meet[0].h.is_constant());
}

TEST_CASE("proj2 of the cubic level-two sets is empty") {
    auto v = make_vars({"p", "q"});
    Polynomial c0 = parse_poly(v, "4*p^3 + 27*q^2");
    Polynomial c1 = parse_poly(v, "6*p - 2*p^2 + 4*p^3 + 9*q^2");
    Ideal closed(v, {c0, c1});
    Ideal curve(v, {c0});
    auto sets =
        proj2(closed, curve, Ideal::zero(v), Polynomial::constant(v, Rational(1)), c1, 1);
    CHECK(sets.empty());
}

TEST_CASE("proj2 of the parabola against a section") {
    auto v = make_vars({"y", "x"});
    Polynomial one = Polynomial::constant(v, Rational(1));
    auto sets = proj2(Ideal(v, {parse_poly(v, "x^2 - y")}), Ideal(v, {parse_poly(v, "x")}),
                      Ideal::zero(v), one, one, 1);
    REQUIRE(sets.size() == 1);
    auto y = sets[0].I.vars;
    CHECK(ideal_equal(sets[0].I, Ideal(y, {parse_poly(y, "y")})));
    CHECK(sets[0].h.is_constant());
}

TEST_CASE("cad_projection of the cubic surface") {
    auto v = make_vars({"p", "q", "x"});
    std::vector<BasicConstructibleSet> input = {
        {Ideal(v, {parse_poly(v, "x^3 + p*x + q")}), Polynomial::constant(v, Rational(1)),
         true}};
    auto sets = cad_projection(input);
    REQUIRE(sets.size() == 3);
    auto y = make_vars({"p", "q"});
    Polynomial c0 = parse_poly(y, "4*p^3 + 27*q^2");
    Polynomial c1 = parse_poly(y, "6*p - 2*p^2 + 4*p^3 + 9*q^2");
    Polynomial one = Polynomial::constant(y, Rational(1));
    std::multiset<std::string> expected = {
        BasicConstructibleSet{Ideal::zero(y), c0.canonicalized(), true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {c0}), c1.canonicalized(), true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {c0, c1}), one, true}.canonical_key(),
    };
    CHECK(key_multiset(sets) == expected);
}

TEST_CASE("cad_projection of a sphere-plane system with an inequation") {
    // first projection round of the running 3-variable example
    auto v = make_vars({"x", "y", "z"});
    Polynomial f1 = parse_poly(v, "x^2 + y^2 + z^2 - 1");
    Polynomial f2 = parse_poly(v, "2*x - 2*y + z - 1");
    Polynomial g = parse_poly(v, "x + y + z + 3/2");
    std::vector<BasicConstructibleSet> input = {
        {Ideal(v, {f1, f2}), g, true},
        {Ideal(v, {f1, f2, g}), Polynomial::constant(v, Rational(1)), true},
    };
    auto sets = cad_projection(input);

    auto y = make_vars({"x", "y"});
    Polynomial p1 = parse_poly(y, "-4*x + 5*x^2 + 4*y - 8*x*y + 5*y^2").canonicalized();
    Polynomial p2 = parse_poly(y, "5 - 2*x + 6*y").canonicalized();
    Polynomial p3 = parse_poly(y, "85 + 188*y + 104*y^2").canonicalized();
    Polynomial one = Polynomial::constant(y, Rational(1));
    // V(p1, p2) and V(p2, p3) coincide: p1 restricted to the line p2 = 0 is
    // p3/4, so the six sets have five distinct canonical keys
    CHECK(ideal_equal(Ideal(y, {p1, p2}), Ideal(y, {p2, p3})));
    std::set<std::string> expected = {
        BasicConstructibleSet{Ideal::zero(y), p1, true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {p1}), p2, true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {p1, p2}), one, true}.canonical_key(),
        BasicConstructibleSet{Ideal::zero(y), p2, true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {p2}), p3, true}.canonical_key(),
        BasicConstructibleSet{Ideal(y, {p2, p3}), one, true}.canonical_key(),
    };
    CHECK(expected.size() == 5);
    std::set<std::string> actual;
    for (auto& s : sets) actual.insert(s.canonical_key());
    CHECK(actual == expected);
    CHECK(sets.size() == 5);
    for (auto& s : sets) CHECK(s.certified);

    // permutation invariance
    std::vector<BasicConstructibleSet> swapped = {input[1], input[0]};
    CHECK(key_multiset(cad_projection(swapped)) == key_multiset(sets));
}

TEST_CASE("simplify_sets heuristics") {
    auto y = make_vars({"p", "q"});
    Polynomial one = Polynomial::constant(y, Rational(1));

    SUBCASE("dedup merges equal sets modulo the ideal") {
        std::vector<BasicConstructibleSet> sets = {
            {Ideal(y, {parse_poly(y, "p")}), parse_poly(y, "q + p"), true},
            {Ideal(y, {parse_poly(y, "p")}), parse_poly(y, "q"), false},
        };
        auto out = simplify_sets(sets);
        REQUIRE(out.size() == 1);
        CHECK(out[0].certified);  // one certified derivation suffices
    }

    SUBCASE("empty sets are dropped") {
        std::vector<BasicConstructibleSet> sets = {
            {Ideal::one(y), one, true},
            {Ideal(y, {parse_poly(y, "p")}), parse_poly(y, "p*q"), true},
            {Ideal(y, {parse_poly(y, "p")}), Polynomial::zero(y), true},
            {Ideal(y, {parse_poly(y, "p")}), parse_poly(y, "q"), true},
        };
        auto out = simplify_sets(sets);
        REQUIRE(out.size() == 1);
        CHECK(out[0].h == parse_poly(y, "q"));
    }

    SUBCASE("squarefree reduction") {
        std::vector<BasicConstructibleSet> sets = {
            {Ideal(y, {parse_poly(y, "p^2")}), parse_poly(y, "q^3"), true},
        };
        SimplifyFlags flags;
        flags.factor = false;
        auto out = simplify_sets(sets, flags);
        REQUIRE(out.size() == 1);
        CHECK(out[0].I.gens[0] == parse_poly(y, "p"));
        CHECK(out[0].h == parse_poly(y, "q"));
    }

    SUBCASE("principal closed sets split into factors") {
        std::vector<BasicConstructibleSet> sets = {
            {Ideal(y, {parse_poly(y, "(p^2 - 1)*q")}), one, true},
        };
        auto out = simplify_sets(sets);
        std::multiset<std::string> expected = {
            BasicConstructibleSet{Ideal(y, {parse_poly(y, "p - 1")}), one, true}
                .canonical_key(),
            BasicConstructibleSet{Ideal(y, {parse_poly(y, "p + 1")}), one, true}
                .canonical_key(),
            BasicConstructibleSet{Ideal(y, {parse_poly(y, "q")}), one, true}.canonical_key(),
        };
        CHECK(key_multiset(out) == expected);
    }

    SUBCASE("discard_open drops covered open sets") {
        std::vector<BasicConstructibleSet> sets = {
            {Ideal::zero(y), parse_poly(y, "p^2 - p"), true},
            {Ideal(y, {parse_poly(y, "p")}), one, true},
            {Ideal(y, {parse_poly(y, "p - 1")}), one, true},
        };
        SimplifyFlags flags;
        flags.discard_open = true;
        auto out = simplify_sets(sets, flags);
        CHECK(out.size() == 2);
        for (auto& s : out) CHECK(!s.I.trivially_zero());

        // a missing complement hypersurface keeps the open set
        sets.pop_back();
        auto kept = simplify_sets(sets, flags);
        CHECK(kept.size() == 2);
    }
}

TEST_CASE("restrict_to_constraints") {
    auto y = make_vars({"p", "q"});
    Polynomial one = Polynomial::constant(y, Rational(1));
    std::vector<BasicConstructibleSet> sets = {
        {Ideal::zero(y), one, true},
        {Ideal(y, {parse_poly(y, "p")}), one, true},
        {Ideal(y, {parse_poly(y, "p - 1")}), one, true},
    };
    Ideal constraint(y, {parse_poly(y, "p")});
    auto out = restrict_to_constraints(sets, constraint);
    REQUIRE(out.size() == 2);
    for (auto& s : out) CHECK(ideal_equal(s.I, constraint));

    auto same = restrict_to_constraints(sets, Ideal::zero(y));
    CHECK(same.size() == sets.size());
}

TEST_CASE("proj1 output covers the base and refines the fiber count") {
    auto v = make_vars({"p", "q", "x"});
    Polynomial f = parse_poly(v, "x^3 + p*x + q");
    auto sets = proj1(Ideal(v, {f}), Ideal::zero(v), Polynomial::constant(v, Rational(1)), 2);
    REQUIRE(sets.size() == 3);

    auto xv = make_vars({"x"});
    std::mt19937 rng(24680);
    std::uniform_int_distribution<int> pick(-8, 8);
    std::vector<std::vector<Rational>> pts;
    for (int k = 0; k < 200; ++k)
        pts.push_back({Rational(pick(rng), 1 + (k % 3)), Rational(pick(rng), 1 + (k % 5))});
    // points on the discriminant curve: p = -3t^2, q = 2t^3
    for (int t = -4; t <= 4; ++t)
        pts.push_back({Rational(-3 * t * t), Rational(2 * t * t * t)});

    // distinct fiber cardinality per output set: 3 on D(c0), 2 on the curve
    // minus the closed stratum, 1 on the closed stratum
    std::vector<std::size_t> expect_count = {3, 2, 1};
    for (auto& pt : pts) {
        bool covered = false;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (!bcs_contains(sets[i], pt)) continue;
            covered = true;
            Polynomial spec = f.subst(0, pt[0]).subst(1, pt[1]).rename_into(xv);
            FiberCount oracle =
                fiber_count_oracle({spec}, Polynomial::constant(xv, Rational(1)));
            CHECK(!oracle.infinite);
            CHECK(oracle.count == expect_count[i]);
        }
        CHECK(covered);
    }
}

TEST_CASE("cad_projection determinism for the cubic level-two sets") {
    auto v = make_vars({"p", "q"});
    Polynomial c0 = parse_poly(v, "4*p^3 + 27*q^2");
    Polynomial c1 = parse_poly(v, "6*p - 2*p^2 + 4*p^3 + 9*q^2");
    std::vector<BasicConstructibleSet> input = {
        {Ideal(v, {c0}), c1, true},
        {Ideal(v, {c0, c1}), Polynomial::constant(v, Rational(1)), true},
    };
    auto a = cad_projection(input);
    std::vector<BasicConstructibleSet> swapped = {input[1], input[0]};
    auto b = cad_projection(swapped);
    CHECK(!a.empty());
    CHECK(key_multiset(a) == key_multiset(b));

    // the level-one sets cover the p-line
    for (int num = -30; num <= 30; ++num) {
        std::vector<Rational> pt = {Rational(num, 7)};
        bool covered = false;
        for (auto& s : a) covered = covered || bcs_contains(s, pt);
        CHECK(covered);
    }
}

TEST_CASE("pair sections are equal or disjoint within projection regions") {
    // V(x^2 - p) against the section x = 0: sections meet exactly at p = 0,
    // which the projection must isolate. Within each output region the
    // equality pattern between the two section families is constant.
    auto v = make_vars({"p", "x"});
    Polynomial one = Polynomial::constant(v, Rational(1));
    Polynomial f = parse_poly(v, "x^2 - p");
    Polynomial g = parse_poly(v, "x");
    std::vector<BasicConstructibleSet> input = {
        {Ideal(v, {f}), one, true},
        {Ideal(v, {g}), one, true},
    };
    auto regions = cad_projection(input);
    REQUIRE(!regions.empty());

    // sign-invariant cells of the line for all region polynomials
    auto y = regions[0].I.vars;
    std::vector<Polynomial> polys;
    for (auto& r : regions) {
        for (auto& q : r.I.gens)
            if (!q.is_constant()) polys.push_back(q);
        if (!r.h.is_constant()) polys.push_back(r.h);
    }
    auto cells = partition1d(polys);
    REQUIRE(!cells.empty());

    auto pattern = [&](const Rational& pstar) {
        std::vector<RealAlgebraicNumber> base = {RealAlgebraicNumber::from_rational(pstar)};
        auto s1 = roots_at_sample(f, base);
        auto s2 = roots_at_sample(g, base);
        REQUIRE(!s1.identically_zero);
        REQUIRE(!s2.identically_zero);
        std::vector<bool> eq;
        for (auto& a : s1.roots)
            for (auto& b : s2.roots) eq.push_back(compare(a, b) == 0);
        return std::make_tuple(s1.roots.size(), s2.roots.size(), eq);
    };

    // three rational samples inside every open cell, bracketed by the
    // neighbouring isolated roots
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].is_point) {
            if (cells[i].point.is_rational()) {
                auto pat = pattern(cells[i].point.rational_value());
                (void)pat;
            }
            continue;
        }
        Rational lo, hi;
        bool has_lo = i > 0, has_hi = i + 1 < cells.size();
        if (has_lo) {
            auto& r = cells[i - 1].point;
            while (r.hi() > cells[i].sample) r.refine();
            lo = (r.hi() + cells[i].sample) / 2;
        } else {
            lo = cells[i].sample - 1;
        }
        if (has_hi) {
            auto& r = cells[i + 1].point;
            while (r.lo() < cells[i].sample) r.refine();
            hi = (r.lo() + cells[i].sample) / 2;
        } else {
            hi = cells[i].sample + 1;
        }
        std::vector<Rational> samples = {lo, cells[i].sample, hi};
        auto first = pattern(samples[0]);
        for (auto& s : samples) CHECK(pattern(s) == first);
    }

    // at the isolated point p = 0 the sections coincide
    bool zero_cell = false;
    for (auto& c : cells)
        if (c.is_point && c.point.is_rational() && c.point.rational_value() == 0) {
            zero_cell = true;
            auto s1 = roots_at_sample(f, {c.point});
            auto s2 = roots_at_sample(g, {c.point});
            REQUIRE(s1.roots.size() == 1);
            REQUIRE(s2.roots.size() == 1);
            CHECK(compare(s1.roots[0], s2.roots[0]) == 0);
        }
    CHECK(zero_cell);
}
