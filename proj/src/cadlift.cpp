#include "gcad/cadlift.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gcad {

namespace {

// real points of the set's fiber line over the sample: common roots of the
// equations filtered by the inequation; an identically vanishing system falls
// back to the inequation's roots (delineability convention for open sets)
std::vector<RealAlgebraicNumber> set_sections(const BasicConstructibleSet& L,
                                              const std::vector<RealAlgebraicNumber>& sample) {
    bool constrained = false;
    std::vector<RealAlgebraicNumber> cands;
    for (const auto& g : L.I.gens) {
        if (g.is_zero()) continue;
        SampleRoots sr = roots_at_sample(g, sample);
        if (sr.identically_zero) continue;
        if (!constrained) {
            cands = std::move(sr.roots);
            constrained = true;
        } else {
            std::vector<RealAlgebraicNumber> kept;
            for (const auto& c : cands)
                for (const auto& r : sr.roots)
                    if (compare(c, r) == 0) {
                        kept.push_back(c);
                        break;
                    }
            cands = std::move(kept);
        }
        if (cands.empty()) return {};
    }
    if (L.h.is_constant()) {
        if (sign(L.h.constant_value()) == 0) return {};  // D(0): empty set
        if (!constrained) return {};                     // whole fiber line: no sections
        return cands;
    }
    SampleRoots hr = roots_at_sample(L.h, sample);
    if (hr.identically_zero) return {};  // inequation vanishes on the line
    if (!constrained) return hr.roots;   // V(I) is the whole line: lift V(h)
    std::vector<RealAlgebraicNumber> kept;
    for (const auto& c : cands) {
        bool on_h = false;
        for (const auto& r : hr.roots)
            if (compare(c, r) == 0) {
                on_h = true;
                break;
            }
        if (!on_h) kept.push_back(c);
    }
    return kept;
}

bool member_of(const BasicConstructibleSet& L, const std::vector<RealAlgebraicNumber>& point) {
    auto sign_of = [&](const Polynomial& p) {
        return p.is_constant() ? sign(p.constant_value()) : sign_at_point(p, point);
    };
    for (const auto& g : L.I.gens)
        if (!g.is_zero() && sign_of(g) != 0) return false;
    return sign_of(L.h) != 0;
}

std::vector<bool> memberships(const std::vector<BasicConstructibleSet>& sets,
                              const std::vector<RealAlgebraicNumber>& point) {
    std::vector<bool> in(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) in[i] = member_of(sets[i], point);
    return in;
}

// rational strictly between two distinct algebraic numbers
Rational between(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
    for (std::size_t step = 0; !(a.hi() < b.lo()); ++step) {
        if (step > refine_limit()) throw BudgetError("lift_cell: band sample budget exhausted");
        a.refine();
        b.refine();
    }
    return (a.hi() + b.lo()) / 2;
}

bool any_inside(const Cell& c) {
    return std::find(c.inside.begin(), c.inside.end(), true) != c.inside.end();
}

std::vector<Cell> level1_cells(const std::vector<BasicConstructibleSet>& sets) {
    std::vector<Polynomial> polys;
    for (const auto& s : sets) {
        // k[x1] is a PID: the reduced basis is the gcd, so redundant
        // generators contribute no spurious partition points
        for (const auto& g : reduced_groebner(s.I, MonomialOrder::grevlex()))
            if (!g.is_constant()) polys.push_back(g);
        if (!s.h.is_constant()) polys.push_back(s.h);
    }
    std::vector<Cell> out;
    for (const auto& pc : partition1d(polys)) {
        Cell c;
        c.level = 1;
        c.kind = pc.is_point ? CellKind::Point : CellKind::Interval;
        c.index = out.size();
        c.sample = {pc.sample_ran()};
        c.path = {out.size()};
        c.dim = pc.is_point ? 0 : 1;
        c.inside = memberships(sets, c.sample);
        out.push_back(std::move(c));
    }
    return out;
}

CellTree build_tree(const std::vector<BasicConstructibleSet>& sets, LiftMode mode,
                    const SimplifyFlags& flags, const std::vector<Ideal>* chain) {
    if (sets.empty()) throw std::invalid_argument("geometric_cad: no input sets");
    CellTree tree;
    tree.vars = sets.front().I.vars;
    const std::size_t n = tree.vars->size();
    if (n == 0) throw std::invalid_argument("geometric_cad: empty variable context");

    tree.precells.resize(n);
    tree.precells[n - 1] = sets;
    for (std::size_t i = n - 1; i >= 1; --i) {
        auto proj = cad_projection(tree.precells[i], flags);
        if (chain) proj = restrict_to_constraints(std::move(proj), (*chain)[i - 1]);
        tree.precells[i - 1] = std::move(proj);
    }
    for (const auto& lvl : tree.precells)
        for (const auto& s : lvl) tree.certified = tree.certified && s.certified;

    tree.levels.resize(n);
    tree.levels[0] = level1_cells(tree.precells[0]);
    if (mode == LiftMode::RelevantOnly)
        std::erase_if(tree.levels[0], [](const Cell& c) { return !any_inside(c); });
    for (std::size_t j = 0; j < tree.levels[0].size(); ++j) {
        tree.levels[0][j].path = {j};
        tree.levels[0][j].index = j;
    }

    for (std::size_t i = 2; i <= n; ++i) {
        auto& out = tree.levels[i - 1];
        for (std::size_t pi = 0; pi < tree.levels[i - 2].size(); ++pi) {
            for (auto& c : lift_cell(tree.levels[i - 2][pi], tree.precells[i - 1])) {
                if (mode == LiftMode::RelevantOnly && !any_inside(c)) continue;
                c.parent = static_cast<long>(pi);
                c.path.back() = out.size();
                out.push_back(std::move(c));
            }
        }
    }
    return tree;
}

}  // namespace

std::vector<Cell> lift_cell(const Cell& cell,
                            const std::vector<BasicConstructibleSet>& precells_i) {
    std::vector<RealAlgebraicNumber> sections;
    for (const auto& L : precells_i)
        for (auto& r : set_sections(L, cell.sample)) sections.push_back(std::move(r));
    std::sort(sections.begin(), sections.end(),
              [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
                  return compare(a, b) < 0;
              });
    sections.erase(std::unique(sections.begin(), sections.end(),
                               [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
                                   return compare(a, b) == 0;
                               }),
                   sections.end());

    std::vector<Cell> out;
    auto add = [&](CellKind kind, std::size_t index, RealAlgebraicNumber coord) {
        Cell c;
        c.level = cell.level + 1;
        c.kind = kind;
        c.index = index;
        c.sample = cell.sample;
        c.sample.push_back(std::move(coord));
        c.path = cell.path;
        c.path.push_back(out.size());
        c.dim = cell.dim + (kind == CellKind::Band ? 1 : 0);
        c.inside = memberships(precells_i, c.sample);
        out.push_back(std::move(c));
    };

    if (sections.empty()) {
        add(CellKind::Band, 0, RealAlgebraicNumber::from_rational(Rational(0)));
        return out;
    }
    add(CellKind::Band, 0, RealAlgebraicNumber::from_rational(sections.front().lo() - 1));
    for (std::size_t j = 0; j < sections.size(); ++j) {
        add(CellKind::Section, j + 1, sections[j]);
        Rational next = j + 1 < sections.size() ? between(sections[j], sections[j + 1])
                                                : sections[j].hi() + 1;
        add(CellKind::Band, j + 1, RealAlgebraicNumber::from_rational(next));
    }
    return out;
}

CellTree geometric_cad(const std::vector<BasicConstructibleSet>& sets, LiftMode mode,
                       const SimplifyFlags& flags) {
    return build_tree(sets, mode, flags, nullptr);
}

bool decide(const PrenexFormula& phi) {
    const std::size_t n = phi.vars->size();

    std::map<std::string, Polynomial> atom_polys;
    auto collect = [&](auto&& self, const FormulaNode& node) -> void {
        if (node.kind == FormulaNode::Kind::Atom) {
            Polynomial p = node.poly.canonicalized();
            if (!p.is_constant()) atom_polys.emplace(p.str(), p);
            return;
        }
        for (const auto& k : node.kids) self(self, k);
    };
    collect(collect, phi.matrix);

    if (atom_polys.empty())  // sign conditions on constants: quantifiers are moot
        return eval_formula(phi.matrix, {});

    std::vector<BasicConstructibleSet> sets;
    Polynomial prod = Polynomial::constant(phi.vars, Rational(1));
    for (const auto& [key, p] : atom_polys) {
        sets.push_back({Ideal(phi.vars, {p}), Polynomial::constant(phi.vars, Rational(1)), true});
        prod = (prod * p).canonicalized();
    }
    sets.push_back({Ideal::zero(phi.vars), prod, true});

    CellTree tree = geometric_cad(sets, LiftMode::Full);

    std::vector<char> truth(tree.levels[n - 1].size());
    for (std::size_t i = 0; i < truth.size(); ++i)
        truth[i] = eval_formula(phi.matrix, tree.levels[n - 1][i].sample);
    for (std::size_t lvl = n; lvl >= 2; --lvl) {
        bool forall = phi.universal[lvl - 1];
        std::vector<char> up(tree.levels[lvl - 2].size(), forall ? 1 : 0);
        for (std::size_t i = 0; i < tree.levels[lvl - 1].size(); ++i) {
            auto p = static_cast<std::size_t>(tree.levels[lvl - 1][i].parent);
            up[p] = forall ? (up[p] && truth[i]) : (up[p] || truth[i]);
        }
        truth = std::move(up);
    }
    bool forall = phi.universal[0];
    bool result = forall;
    for (char t : truth) result = forall ? (result && t) : (result || t);
    return result;
}

std::vector<RealCountRegion> classify_real(const Ideal& I, const Polynomial& h,
                                           std::size_t param_count) {
    const std::size_t n = I.vars->size();
    if (param_count < 1 || param_count > n)
        throw std::invalid_argument("classify_real: bad parameter count");
    CellTree tree = geometric_cad({{I, h, true}}, LiftMode::Full);

    std::vector<RealCountRegion> out;
    for (const auto& P : tree.levels[param_count - 1]) {
        bool infinite = false;
        std::size_t count = 0;
        for (const auto& C : tree.levels[n - 1]) {
            if (!C.inside[0]) continue;
            if (!std::equal(P.path.begin(), P.path.end(), C.path.begin())) continue;
            if (C.dim > P.dim)
                infinite = true;
            else
                ++count;
        }
        out.push_back({P, infinite ? FiberCount{true, 0} : FiberCount{false, count}});
    }
    return out;
}

CellTree cad_with_constraints(const Ideal& eq, const Polynomial& ineq,
                              const std::vector<Polynomial>& targets, LiftMode mode) {
    const VarsPtr& vars = eq.vars;
    const std::size_t n = vars->size();
    if (ineq.is_zero() || contains_one(eq)) {
        CellTree empty;
        empty.vars = vars;
        return empty;
    }

    std::vector<BasicConstructibleSet> sets;
    Polynomial prod = ineq;
    for (const auto& g : targets) {
        sets.push_back({ideal_sum(eq, {g}), ineq, true});
        prod = (prod * g).canonicalized();
    }
    sets.push_back({eq, prod, true});

    // silhouette chain: elimination ideals of the constraint locus saturated
    // by the inequation
    VarList enames = *vars;
    enames.push_back(fresh_var_name(enames, "zc"));
    VarsPtr evars = make_vars(std::move(enames));
    Ideal E(evars);
    for (const auto& g : eq.gens) E.gens.push_back(g.rename_into(evars));
    if (!ineq.is_constant()) {
        Polynomial z = Polynomial::variable(evars, n);
        E.gens.push_back(z * ineq.rename_into(evars) - Polynomial::constant(evars, Rational(1)));
    }
    std::vector<Ideal> chain;
    for (std::size_t i = 1; i < n; ++i) {
        VarsPtr ctx = make_vars(VarList(vars->begin(), vars->begin() + i));
        Ideal Ci(ctx);
        for (const auto& g : elimination_ideal(E, i).gens)
            Ci.gens.push_back(g.rename_into(ctx));
        chain.push_back(std::move(Ci));
    }
    return build_tree(sets, mode, SimplifyFlags{}, &chain);
}

}  // namespace gcad
