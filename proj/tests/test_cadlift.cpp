#include <doctest.h>

#include <map>
#include <random>

#include "gcad/cadlift.hpp"

using namespace gcad;

namespace {

std::vector<BasicConstructibleSet> cubic_input(const VarsPtr& v) {
    return {{Ideal(v, {parse_poly(v, "x^3 + p*x + q")}), Polynomial::constant(v, Rational(1)),
             true}};
}

std::vector<std::size_t> per_parent_counts(const CellTree& t, std::size_t level) {
    std::vector<std::size_t> counts(t.levels[level - 2].size(), 0);
    for (const auto& c : t.levels[level - 1]) counts.at(static_cast<std::size_t>(c.parent))++;
    return counts;
}

// structural CAD invariants: cylindricity, per-fiber ordering, path identity
void check_tree_invariants(const CellTree& t) {
    for (std::size_t lvl = 1; lvl <= t.levels.size(); ++lvl) {
        long prev_parent = -2;
        const Cell* prev = nullptr;
        for (std::size_t i = 0; i < t.levels[lvl - 1].size(); ++i) {
            const Cell& c = t.levels[lvl - 1][i];
            REQUIRE(c.level == lvl);
            REQUIRE(c.sample.size() == lvl);
            REQUIRE(c.path.size() == lvl);
            CHECK(c.path.back() == i);
            CHECK(c.inside.size() == t.precells[lvl - 1].size());
            if (lvl == 1) {
                CHECK(c.parent == -1);
            } else {
                REQUIRE(c.parent >= 0);
                const Cell& p = t.levels[lvl - 2][static_cast<std::size_t>(c.parent)];
                for (std::size_t k = 0; k + 1 < lvl; ++k)
                    CHECK(compare(c.sample[k], p.sample[k]) == 0);
                CHECK(std::equal(p.path.begin(), p.path.end(), c.path.begin()));
                CHECK(c.dim == p.dim + (c.kind == CellKind::Band ? 1 : 0));
            }
            // cells over a common parent are emitted in strictly increasing
            // last-coordinate order, sections and bands interleaved
            if (prev != nullptr && c.parent == prev_parent)
                CHECK(compare(prev->sample.back(), c.sample.back()) < 0);
            prev = &c;
            prev_parent = c.parent;
        }
    }
}

bool cell_member(const BasicConstructibleSet& L, const std::vector<RealAlgebraicNumber>& pt) {
    auto sign_of = [&](const Polynomial& p) {
        return p.is_constant() ? sign(p.constant_value()) : sign_at_point(p, pt);
    };
    for (const auto& g : L.I.gens)
        if (!g.is_zero() && sign_of(g) != 0) return false;
    return sign_of(L.h) != 0;
}

// sign invariance: membership at 3 extra samples inside each level-n cell
// (rationals within band bounds; interval refinement for sections)
void check_sign_invariance(const CellTree& t) {
    const std::size_t n = t.levels.size();
    const auto& sets = t.precells[n - 1];
    for (const auto& c : t.levels[n - 1]) {
        std::vector<Rational> extra;
        if (c.kind == CellKind::Band || c.kind == CellKind::Interval) {
            // locate the bounding sections among the siblings
            const RealAlgebraicNumber* lo = nullptr;
            const RealAlgebraicNumber* hi = nullptr;
            for (const auto& s : t.levels[n - 1]) {
                if (s.parent != c.parent || s.kind != CellKind::Section) continue;
                if (s.index == c.index) lo = &s.sample.back();
                if (s.index == c.index + 1) hi = &s.sample.back();
            }
            if (lo && hi) {
                while (!(lo->hi() < hi->lo())) {
                    lo->refine();
                    hi->refine();
                }
                Rational a = lo->hi(), b = hi->lo();
                extra = {a + (b - a) / 4, a + (b - a) / 2, a + (b - a) * 3 / 4};
            } else if (lo) {
                extra = {lo->hi() + 1, lo->hi() + 2, lo->hi() + rat(17, 2)};
            } else if (hi) {
                extra = {hi->lo() - 1, hi->lo() - 2, hi->lo() - rat(17, 2)};
            } else {
                extra = {Rational(-7), Rational(0), rat(22, 7)};
            }
            for (const auto& x : extra) {
                auto pt = c.sample;
                pt.back() = RealAlgebraicNumber::from_rational(x);
                for (std::size_t s = 0; s < sets.size(); ++s)
                    CHECK(cell_member(sets[s], pt) == c.inside[s]);
            }
        } else {
            for (int k = 0; k < 3; ++k) {
                c.sample.back().refine();
                for (std::size_t s = 0; s < sets.size(); ++s)
                    CHECK(cell_member(sets[s], c.sample) == c.inside[s]);
            }
        }
    }
}

// the cubic criterion: roots of x^3 + px + q by the signs of 4p^3+27q^2 and p
std::size_t cubic_expected(int disc_sign, int p_sign) {
    if (disc_sign < 0) return 3;
    if (disc_sign == 0 && p_sign < 0) return 2;
    return 1;
}

}  // namespace

TEST_CASE("prenex formula parsing") {
    PrenexFormula phi = parse_formula("A p A q E x (x^3 + p*x + q = 0)");
    REQUIRE(phi.vars->size() == 3);
    CHECK((*phi.vars)[0] == "p");
    CHECK((*phi.vars)[2] == "x");
    CHECK(phi.universal == std::vector<bool>({true, true, false}));
    REQUIRE(phi.matrix.kind == FormulaNode::Kind::Atom);
    CHECK(phi.matrix.rel == Rel::Eq);
    CHECK(phi.matrix.poly == parse_poly(phi.vars, "x^3 + p*x + q"));

    // relations move the right-hand side over
    PrenexFormula psi = parse_formula("E x (x^2 <= 2*x - 1)");
    CHECK(psi.matrix.rel == Rel::Le);
    CHECK(psi.matrix.poly.canonicalized() == parse_poly(psi.vars, "x^2 - 2*x + 1"));

    // boolean structure with arithmetic parentheses inside atoms
    PrenexFormula chi = parse_formula("A x E y (x = 0 or ((x + 1)*(x - 1) > 0 and not (y <= x)))");
    REQUIRE(chi.matrix.kind == FormulaNode::Kind::Or);
    REQUIRE(chi.matrix.kids.size() == 2);
    const FormulaNode& conj = chi.matrix.kids[1];
    REQUIRE(conj.kind == FormulaNode::Kind::And);
    CHECK(conj.kids[0].poly.canonicalized() == parse_poly(chi.vars, "x^2 - 1"));
    REQUIRE(conj.kids[1].kind == FormulaNode::Kind::Not);
    CHECK(conj.kids[1].kids[0].rel == Rel::Le);

    CHECK(parse_formula("E x (x != 0)").matrix.rel == Rel::Ne);
    CHECK_THROWS_AS(parse_formula("x = 0"), std::runtime_error);            // no prefix
    CHECK_THROWS_AS(parse_formula("A p (q = 0)"), std::invalid_argument);   // free variable
    CHECK_THROWS_AS(parse_formula("A p (p = 0) junk"), std::runtime_error); // trailing input
    CHECK_THROWS_AS(parse_formula("A p (p = )"), std::runtime_error);
    CHECK_THROWS_AS(parse_formula("A p (p 0)"), std::runtime_error);
}

TEST_CASE("formula evaluation at algebraic points") {
    PrenexFormula phi = parse_formula("E x (x^2 - 2 = 0 and x > 0)");
    auto roots = isolate_roots(parse_poly(phi.vars, "x^2 - 2"));
    REQUIRE(roots.size() == 2);
    CHECK(!eval_formula(phi.matrix, {roots[0]}));
    CHECK(eval_formula(phi.matrix, {roots[1]}));
    CHECK(!eval_formula(phi.matrix, {RealAlgebraicNumber::from_rational(Rational(1))}));
}

TEST_CASE("lift_cell over the cubic level-one cells") {
    auto v = make_vars({"p", "q", "x"});
    auto lvl2 = cad_projection(cubic_input(v));

    auto lift_at = [&](const Rational& p0) {
        Cell base;
        base.level = 1;
        base.kind = CellKind::Interval;
        base.sample = {RealAlgebraicNumber::from_rational(p0)};
        base.path = {0};
        base.dim = 1;
        return lift_cell(base, lvl2);
    };

    auto on_neg = lift_at(Rational(-1));  // two roots of 4p^3 + 27q^2 in q
    REQUIRE(on_neg.size() == 5);
    CHECK(on_neg[0].kind == CellKind::Band);
    CHECK(on_neg[1].kind == CellKind::Section);
    CHECK(on_neg[2].kind == CellKind::Band);
    CHECK(on_neg[3].kind == CellKind::Section);
    CHECK(on_neg[4].kind == CellKind::Band);
    // the sections are q = +-2/(3 sqrt 3): roots of 27q^2 - 4
    auto disc = to_upoly(parse_poly(make_vars({"q"}), "27*q^2 - 4"), 0);
    CHECK(sign_at(disc, on_neg[1].sample.back()) == 0);
    CHECK(sign_at(disc, on_neg[3].sample.back()) == 0);

    auto on_zero = lift_at(Rational(0));  // one section q = 0
    REQUIRE(on_zero.size() == 3);
    CHECK(on_zero[1].kind == CellKind::Section);
    CHECK(on_zero[1].sample.back().is_rational());
    CHECK(on_zero[1].sample.back().rational_value() == 0);

    auto on_pos = lift_at(Rational(1));  // no real sections
    REQUIRE(on_pos.size() == 1);
    CHECK(on_pos[0].kind == CellKind::Band);
}

TEST_CASE("geometric_cad of the cubic surface") {
    auto v = make_vars({"p", "q", "x"});
    CellTree t = geometric_cad(cubic_input(v), LiftMode::Full);
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[0].size() == 3);
    CHECK(t.levels[1].size() == 9);
    CHECK(t.levels[2].size() == 35);
    CHECK(t.certified);

    // level 1 = (-inf, 0), {0}, (0, inf)
    REQUIRE(t.levels[0].size() == 3);
    CHECK(t.levels[0][0].kind == CellKind::Interval);
    CHECK(t.levels[0][1].kind == CellKind::Point);
    CHECK(t.levels[0][1].sample[0].is_rational());
    CHECK(t.levels[0][1].sample[0].rational_value() == 0);
    CHECK(t.levels[0][2].kind == CellKind::Interval);

    CHECK(per_parent_counts(t, 2) == std::vector<std::size_t>({5, 3, 1}));

    check_tree_invariants(t);
    check_sign_invariance(t);

    // the input variety is a union of level-3 cells: membership matches the
    // sign of the defining polynomial at every sample
    Polynomial f = parse_poly(v, "x^3 + p*x + q");
    for (const auto& c : t.levels[2])
        CHECK(c.inside[0] == (sign_at_point(f, c.sample) == 0));
}

TEST_CASE("geometric_cad relevant-only mode keeps only covered cells") {
    auto v = make_vars({"p", "q", "x"});
    CellTree full = geometric_cad(cubic_input(v), LiftMode::Full);
    CellTree rel = geometric_cad(cubic_input(v), LiftMode::RelevantOnly);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel.levels[i].size() <= full.levels[i].size());
    for (const auto& lvl : rel.levels)
        for (const auto& c : lvl)
            CHECK(std::find(c.inside.begin(), c.inside.end(), true) != c.inside.end());
    check_tree_invariants(rel);
}

TEST_CASE("geometric_cad of the whole line") {
    auto v = make_vars({"x"});
    CellTree t = geometric_cad({{Ideal::zero(v), Polynomial::constant(v, Rational(1)), true}});
    REQUIRE(t.levels.size() == 1);
    REQUIRE(t.levels[0].size() == 1);
    CHECK(t.levels[0][0].kind == CellKind::Interval);
    CHECK(t.levels[0][0].inside == std::vector<bool>({true}));
}

TEST_CASE("decide") {
    CHECK(decide(parse_formula("A p A q E x (x^3 + p*x + q = 0)")));
    CHECK(!decide(parse_formula("A p A q E x (p*x + q = 0)")));
    CHECK(!decide(parse_formula("E x (x^2 + 1 = 0)")));

    CHECK(decide(parse_formula("A x (x^2 >= 0)")));
    CHECK(!decide(parse_formula("E x (x^2 < 0)")));
    CHECK(!decide(parse_formula("A p E x (x^2 = p)")));
    CHECK(decide(parse_formula("E p A x (x^2 + p > 0)")));
    CHECK(decide(parse_formula("E x (x^2 - 2 = 0 and x > 0)")));
    CHECK(!decide(parse_formula("E x (x^2 - 2 = 0 and x > 2)")));
    CHECK(decide(parse_formula("A p (not (p^2 < 0))")));
    CHECK(decide(parse_formula("A x (x > 1 or x < 2)")));
}

TEST_CASE("decide is invariant under same-block quantifier permutation") {
    CHECK(decide(parse_formula("A q A p E x (x^3 + p*x + q = 0)")));
    CHECK(!decide(parse_formula("A q A p E x (p*x + q = 0)")));
    CHECK(decide(parse_formula("E q E p (p^2 + q^2 = 2 and p > q)")) ==
          decide(parse_formula("E p E q (p^2 + q^2 = 2 and p > q)")));
}

TEST_CASE("classify_real of the cubic") {
    auto v = make_vars({"p", "q", "x"});
    Ideal I(v, {parse_poly(v, "x^3 + p*x + q")});
    auto regions = classify_real(I, Polynomial::constant(v, Rational(1)), 2);
    REQUIRE(regions.size() == 9);

    auto y = make_vars({"p", "q"});
    Polynomial disc = parse_poly(y, "4*p^3 + 27*q^2");
    Polynomial pp = parse_poly(y, "p");
    for (const auto& r : regions) {
        REQUIRE(!r.count.infinite);
        int ds = sign_at_point(disc, r.cell.sample);
        int ps = pp.is_constant() ? 0 : sign_at_point(pp, r.cell.sample);
        CHECK(r.count.count == cubic_expected(ds, ps));
    }
}

TEST_CASE("classify_real of the linear polynomial") {
    auto v = make_vars({"p", "q", "x"});
    Ideal I(v, {parse_poly(v, "p*x + q")});
    auto regions = classify_real(I, Polynomial::constant(v, Rational(1)), 2);
    REQUIRE(!regions.empty());

    auto y = make_vars({"p", "q"});
    Polynomial pp = parse_poly(y, "p");
    Polynomial qq = parse_poly(y, "q");
    for (const auto& r : regions) {
        int ps = sign_at_point(pp, r.cell.sample);
        int qs = sign_at_point(qq, r.cell.sample);
        if (ps != 0) {
            CHECK(!r.count.infinite);
            CHECK(r.count.count == 1);
        } else if (qs != 0) {
            CHECK(!r.count.infinite);
            CHECK(r.count.count == 0);
        } else {
            CHECK(r.count.infinite);  // the whole line over the origin
        }
    }
}

TEST_CASE("classify_real of the empty system") {
    auto v = make_vars({"p", "x"});
    auto regions = classify_real(Ideal::zero(v), Polynomial::constant(v, Rational(1)), 1);
    REQUIRE(!regions.empty());
    for (const auto& r : regions) CHECK(r.count.infinite);
}

TEST_CASE("real-count soundness against a Sturm oracle") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 8);
    auto v = make_vars({"x"});
    for (int trial = 0; trial < 200; ++trial) {
        Rational p0 = rat(num(rng), den(rng));
        Rational q0 = rat(num(rng), den(rng));
        Polynomial f = Polynomial::variable(v, 0).pow(3) + Polynomial::variable(v, 0) * p0 +
                       Polynomial::constant(v, q0);
        std::size_t roots = sturm_count(to_upoly(f, 0));
        Rational d = p0 * p0 * p0 * 4 + q0 * q0 * 27;
        CHECK(roots == cubic_expected(sign(d), sign(p0)));
    }
}

TEST_CASE("cad_with_constraints on the sphere-plane system") {
    auto v = make_vars({"x", "y", "z"});
    Ideal eq(v, {parse_poly(v, "x^2 + y^2 + z^2 - 1"), parse_poly(v, "2*x - 2*y + z - 1")});
    Polynomial g = parse_poly(v, "x + y + z + 3/2");
    CellTree t = cad_with_constraints(eq, Polynomial::constant(v, Rational(1)), {g});

    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[1].size() == 4);
    CHECK(t.levels[2].size() == 4);
    check_tree_invariants(t);

    // the two level-1 point cells are the roots of 9x^2 - 4x - 4
    auto sil = to_upoly(parse_poly(make_vars({"x"}), "9*x^2 - 4*x - 4"), 0);
    std::size_t points = 0;
    for (const auto& c : t.levels[0])
        if (c.kind == CellKind::Point) {
            ++points;
            CHECK(sign_at(sil, c.sample[0]) == 0);
        }
    CHECK(points == 2);

    // g is positive on every level-3 sample: the constraint system with g <= 0
    // is unsatisfiable
    for (const auto& c : t.levels[2]) CHECK(sign_at_point(g, c.sample) > 0);
}

TEST_CASE("cad_with_constraints on EBD-2") {
    auto v = make_vars({"x", "y", "z"});
    Ideal eq(v, {parse_poly(v, "x + y^2 + z"), parse_poly(v, "x - y^2 + z")});
    Polynomial g = parse_poly(v, "x^2 + y^2 + z^2 - 1");
    CellTree t = cad_with_constraints(eq, Polynomial::constant(v, Rational(1)), {g});
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[0].size() == 5);
    CHECK(t.levels[1].size() == 5);
    CHECK(t.levels[2].size() == 5);
    check_tree_invariants(t);
}

TEST_CASE("cad_with_constraints of the unit ideal is empty") {
    auto v = make_vars({"x", "y"});
    CellTree t = cad_with_constraints(Ideal::one(v), Polynomial::constant(v, Rational(1)), {});
    CHECK(t.levels.empty());
    CellTree t0 = cad_with_constraints(Ideal::zero(v), Polynomial::zero(v), {});
    CHECK(t0.levels.empty());  // D(0) constraint: nothing to decompose
}
