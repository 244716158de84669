#include "gcad/cadproject.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "gcad/decompose.hpp"
#include "gcad/hermite.hpp"

namespace gcad {

namespace {

VarsPtr y_context(const VarsPtr& vars, std::size_t split) {
    VarList ys(vars->begin(), vars->begin() + (long)split);
    return make_vars(ys);
}

Ideal to_y(const Ideal& I, const VarsPtr& yvars) {
    Ideal r(yvars);
    for (auto& g : I.gens)
        if (!g.is_zero()) r.gens.push_back(g.rename_into(yvars));
    return r;
}

Ideal lift_to(const Ideal& I, const VarsPtr& vars) {
    Ideal r(vars);
    for (auto& g : I.gens)
        if (!g.is_zero()) r.gens.push_back(g.rename_into(vars));
    return r;
}

Polynomial product_of(const std::vector<Polynomial>& fs, const VarsPtr& vars) {
    Polynomial w = Polynomial::constant(vars, Rational(1));
    for (auto& f : fs) w = w * f;
    return w;
}

// I in k[y,x,..] extended by a fresh z with z*h - 1
Ideal rabinowitsch_extend(const Ideal& I, const Polynomial& h) {
    VarList ext = *I.vars;
    ext.push_back(fresh_var_name(ext, "zproj_"));
    VarsPtr evars = make_vars(ext);
    Ideal E = lift_to(I, evars);
    Polynomial z = Polynomial::variable(evars, evars->size() - 1);
    E.gens.push_back(z * h.rename_into(evars) - Polynomial::constant(evars, Rational(1)));
    return E;
}

struct Proj1Worker {
    std::size_t split;
    VarsPtr yvars;
    std::vector<BasicConstructibleSet> out;

    void emit(Ideal a, Polynomial b, bool certified) {
        out.push_back({std::move(a), std::move(b), certified});
    }

    void run(const Ideal& I, const Ideal& J, const Polynomial& h, bool certified,
             std::set<std::string> path = {}) {
        std::string key = ideal_key(I) + "#" + ideal_key(J) + "#" + h.str();
        if (!path.insert(key).second)
            throw std::logic_error("proj1: recursion revisited a state");

        if (contains_one(I)) {
            emit(to_y(J, yvars), Polynomial::constant(yvars, Rational(1)), certified);
            return;
        }

        Ideal Jc = elimination_ideal(I, split);
        if (!ideal_equal(Jc, J)) {
            // V(J) \ V(Jc) as successive differences over the GB of Jc
            Ideal Jcy = to_y(Jc, yvars);
            Ideal acc = to_y(J, yvars);
            for (auto& q : reduced_groebner(Jcy, MonomialOrder::grevlex())) {
                emit(acc, q, certified);
                acc = ideal_sum(acc, {q});
            }
            for (auto& c : minimal_primes(Jcy)) {
                Ideal Ji = lift_to(c.ideal, I.vars);
                run(ideal_sum(I, Ji), Ji, h, certified && c.certified, path);
            }
            return;
        }

        MonomialOrder T = MonomialOrder::block(split);
        const auto& G = reduced_groebner(I, T);
        bool all_y = true;
        for (auto& g : G)
            for (std::size_t v = split; all_y && v < I.vars->size(); ++v)
                if (g.degree_in(v) > 0) all_y = false;
        if (all_y) {
            // V(I) = V(J) x A^1: replace D(h) with V(I + <h>)
            run(ideal_sum(I, {h}), J, Polynomial::constant(I.vars, Rational(1)), certified,
                path);
            return;
        }

        HermiteContext ctx = make_hermite_context(I, J, split);
        HermiteForm H = hermite_matrix(ctx, h);
        ClearedCharpoly cp = charpoly_cleared(H);
        std::size_t s = ctx.basis.size();
        Polynomial wy = ctx.w.is_constant() ? Polynomial::constant(yvars, Rational(1))
                                            : ctx.w.rename_into(yvars);
        // rank strata of H_h: rank s-i exactly where c_0..c_{i-1} vanish and
        // c_i does not. Once the remaining coefficients cannot vanish
        // simultaneously, the tail collapses to one closed stratum (i = s has
        // c_s = 1, so the loop always ends there at the latest).
        Ideal prefix = to_y(J, yvars);
        for (std::size_t i = 0; i <= s; ++i) {
            if (cp.coeffs[i].is_zero()) continue;  // D(0): empty slice
            Polynomial ci = cp.coeffs[i].rename_into(yvars).canonicalized();
            if (contains_one(ideal_sum(prefix, {ci}))) {
                emit(prefix, wy, certified);
                break;
            }
            emit(prefix, (wy * ci).canonicalized(), certified);
            prefix = ideal_sum(prefix, {ci});
        }
        if (!ctx.w.is_constant()) {
            Ideal Jw = ideal_sum(to_y(J, yvars), {wy});
            for (auto& c : minimal_primes(Jw)) {
                Ideal Ji = lift_to(c.ideal, I.vars);
                run(ideal_sum(I, Ji), Ji, h, certified && c.certified, path);
            }
        }
    }
};

struct Proj2SubWorker {
    std::size_t split;
    VarsPtr yvars;
    Polynomial wy;  // witness from the caller, y context
    std::vector<BasicConstructibleSet> out;

    void run(const Ideal& I0, const Ideal& J0, const Polynomial& hp, bool certified,
             std::set<std::string> path = {}) {
        std::string key = ideal_key(I0) + "#" + ideal_key(J0);
        if (!path.insert(key).second)
            throw std::logic_error("proj2sub: recursion revisited a state");

        // saturation-aware: both exits test the Rabinowitsch extension
        Ideal E = rabinowitsch_extend(I0, hp);
        MonomialOrder T = MonomialOrder::block(split);
        const auto& G = reduced_groebner(E, T);
        if (G.size() == 1 && G[0].is_constant()) return;  // V(I0) cap D(h') empty

        Ideal Ecy = to_y(elimination_ideal(E, split), yvars);
        if (!ideal_equal(Ecy, to_y(J0, yvars))) {
            for (auto& c : minimal_primes(Ecy)) {
                Ideal Ji = lift_to(c.ideal, I0.vars);
                run(ideal_sum(I0, Ji), Ji, hp, certified && c.certified, path);
            }
            return;
        }

        const auto& Jgb = reduced_groebner(lift_to(J0, E.vars), MonomialOrder::grevlex());
        auto vf = lc_factors(G, Jgb, split, T);
        Polynomial v = product_of(vf, E.vars);
        Polynomial vy = v.is_constant() ? Polynomial::constant(yvars, Rational(1))
                                        : v.rename_into(yvars);
        out.push_back({to_y(J0, yvars), (wy * vy).canonicalized(), certified});
        if (!v.is_constant()) {
            Ideal Jv = ideal_sum(to_y(J0, yvars), {vy});
            for (auto& c : minimal_primes(Jv)) {
                Ideal Ji = lift_to(c.ideal, I0.vars);
                run(ideal_sum(I0, Ji), Ji, hp, certified && c.certified, path);
            }
        }
    }
};

struct Proj2Worker {
    std::size_t split;
    VarsPtr yvars;
    std::vector<BasicConstructibleSet> out;

    void run(const Ideal& I, const Ideal& Ip, const Ideal& J, const Polynomial& h,
             const Polynomial& hp, bool certified, std::set<std::string> path = {}) {
        std::string key = ideal_key(I) + "#" + ideal_key(J) + "#" + h.str();
        if (!path.insert(key).second)
            throw std::logic_error("proj2: recursion revisited a state");

        if (contains_one(I)) return;

        Ideal Jcy = to_y(elimination_ideal(I, split), yvars);
        if (!ideal_equal(Jcy, to_y(J, yvars))) {
            for (auto& c : minimal_primes(Jcy)) {
                Ideal Ji = lift_to(c.ideal, I.vars);
                run(ideal_sum(I, Ji), Ip, Ji, h, hp, certified && c.certified, path);
            }
            return;
        }

        MonomialOrder T = MonomialOrder::block(split);
        const auto& G = reduced_groebner(I, T);
        bool all_y = true;
        for (auto& g : G)
            for (std::size_t v = split; all_y && v < I.vars->size(); ++v)
                if (g.degree_in(v) > 0) all_y = false;
        if (all_y) {
            run(ideal_sum(I, {h}), Ip, J, Polynomial::constant(I.vars, Rational(1)), hp,
                certified, path);
            return;
        }

        const auto& Jgb = reduced_groebner(J, MonomialOrder::grevlex());
        auto wf = lc_factors(G, Jgb, split, T);
        Polynomial w = product_of(wf, I.vars);
        Polynomial wy = w.is_constant() ? Polynomial::constant(yvars, Rational(1))
                                        : w.rename_into(yvars);

        Proj2SubWorker sub{split, yvars, wy, {}};
        sub.run(ideal_sum(I, Ip), Ideal::zero(I.vars), hp, certified);
        for (auto& s : sub.out) out.push_back(std::move(s));

        if (!w.is_constant()) {
            Ideal Jw = ideal_sum(to_y(J, yvars), {wy});
            for (auto& c : minimal_primes(Jw)) {
                Ideal Ji = lift_to(c.ideal, I.vars);
                run(ideal_sum(I, Ji), Ip, Ji, h, hp, certified && c.certified, path);
            }
        }
    }
};

bool set_is_empty(const BasicConstructibleSet& s) {
    if (s.h.is_zero()) return true;
    if (contains_one(s.I)) return true;
    if (!s.h.is_constant() && radical_membership(s.h, s.I)) return true;
    return false;
}

// nonconstant generators, zeros skipped; nullptr if a nonzero constant is present
const Polynomial* single_nonconstant_gen(const Ideal& I, std::size_t& count) {
    const Polynomial* found = nullptr;
    count = 0;
    for (auto& g : I.gens) {
        if (g.is_zero()) continue;
        if (g.is_constant()) return nullptr;
        ++count;
        found = &g;
    }
    return found;
}

}  // namespace

std::string BasicConstructibleSet::canonical_key() const {
    const auto& G = reduced_groebner(I, MonomialOrder::grevlex());
    std::string key = ideal_key(I);
    key += "|";
    Polynomial hn = normal_form(h, G, MonomialOrder::grevlex()).canonicalized();
    key += hn.str();
    return key;
}

std::vector<BasicConstructibleSet> proj1(const Ideal& I, const Ideal& J, const Polynomial& h,
                                         std::size_t split) {
    Proj1Worker w{split, y_context(I.vars, split), {}};
    w.run(I, J, h, true);
    return w.out;
}

std::vector<BasicConstructibleSet> proj2sub(const Ideal& I0, const Ideal& J0,
                                            const Polynomial& hp, const Polynomial& w,
                                            std::size_t split) {
    VarsPtr yvars = y_context(I0.vars, split);
    Polynomial wy = w.is_constant() ? Polynomial::constant(yvars, Rational(1))
                                    : w.rename_into(yvars);
    Proj2SubWorker worker{split, yvars, wy, {}};
    worker.run(I0, J0, hp, true);
    return worker.out;
}

std::vector<BasicConstructibleSet> proj2(const Ideal& I, const Ideal& Ip, const Ideal& J,
                                         const Polynomial& h, const Polynomial& hp,
                                         std::size_t split) {
    Proj2Worker w{split, y_context(I.vars, split), {}};
    w.run(I, Ip, J, h, hp, true);
    return w.out;
}

std::vector<BasicConstructibleSet> simplify_sets(std::vector<BasicConstructibleSet> sets,
                                                 const SimplifyFlags& flags) {
    if (flags.squarefree) {
        for (auto& s : sets) {
            for (auto& g : s.I.gens)
                if (!g.is_zero()) g = squarefree_part(g).canonicalized();
            if (!s.h.is_zero() && !s.h.is_constant())
                s.h = squarefree_part(s.h).canonicalized();
        }
    }

    if (flags.factor) {
        // V(fg) -> {V(f), V(g)} for principal closed parts
        std::vector<BasicConstructibleSet> split_sets;
        for (auto& s : sets) {
            std::size_t count = 0;
            const Polynomial* gen = single_nonconstant_gen(s.I, count);
            if (gen && count == 1) {
                auto factors = factor_split(*gen);
                if (factors.size() > 1) {
                    for (auto& f : factors)
                        split_sets.push_back(
                            {Ideal(s.I.vars, {f.factor.canonicalized()}), s.h, s.certified});
                    continue;
                }
            }
            split_sets.push_back(std::move(s));
        }
        sets = std::move(split_sets);
    }

    if (flags.drop_empty) {
        std::vector<BasicConstructibleSet> kept;
        for (auto& s : sets)
            if (!set_is_empty(s)) kept.push_back(std::move(s));
        sets = std::move(kept);
    }

    std::vector<std::pair<std::string, BasicConstructibleSet>> keyed;
    keyed.reserve(sets.size());
    for (auto& s : sets) keyed.emplace_back(s.canonical_key(), std::move(s));

    if (flags.dedup) {
        std::map<std::string, std::size_t> seen;
        std::vector<std::pair<std::string, BasicConstructibleSet>> unique;
        for (auto& [k, s] : keyed) {
            auto it = seen.find(k);
            if (it == seen.end()) {
                seen.emplace(k, unique.size());
                unique.emplace_back(k, std::move(s));
            } else {
                // either derivation certifies the set
                unique[it->second].second.certified |= s.certified;
            }
        }
        keyed = std::move(unique);
    }

    if (flags.discard_open) {
        // drop D(h) when every hypersurface of its complement is retained
        std::set<std::string> closed_keys;
        for (auto& [k, s] : keyed)
            if (!s.I.trivially_zero()) closed_keys.insert(ideal_key(s.I));
        std::vector<std::pair<std::string, BasicConstructibleSet>> kept;
        for (auto& [k, s] : keyed) {
            bool drop = false;
            if (s.I.trivially_zero() && !s.h.is_constant()) {
                drop = true;
                for (auto& f : factor_split(s.h)) {
                    Ideal vf(s.I.vars, {f.factor.canonicalized()});
                    if (!closed_keys.count(ideal_key(vf))) {
                        drop = false;
                        break;
                    }
                }
            }
            if (!drop) kept.emplace_back(k, std::move(s));
        }
        keyed = std::move(kept);
    }

    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BasicConstructibleSet> out;
    out.reserve(keyed.size());
    for (auto& [k, s] : keyed) out.push_back(std::move(s));
    return out;
}

std::vector<BasicConstructibleSet> cad_projection(
    const std::vector<BasicConstructibleSet>& sets, const SimplifyFlags& flags) {
    if (sets.empty()) return {};
    const VarsPtr& vars = sets[0].I.vars;
    std::size_t split = vars->size() - 1;
    Ideal zero = Ideal::zero(vars);
    std::vector<BasicConstructibleSet> ret;
    for (auto& s : sets) {
        auto part = proj1(s.I, zero, s.h, split);
        for (auto& r : part) {
            r.certified = r.certified && s.certified;
            ret.push_back(std::move(r));
        }
    }
    // both orientations keep the union invariant under input permutation
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i == j) continue;
            auto part = proj2(sets[i].I, sets[j].I, zero, sets[i].h, sets[j].h, split);
            for (auto& r : part) {
                r.certified = r.certified && sets[i].certified && sets[j].certified;
                ret.push_back(std::move(r));
            }
        }
    return simplify_sets(std::move(ret), flags);
}

std::vector<BasicConstructibleSet> restrict_to_constraints(
    std::vector<BasicConstructibleSet> sets, const Ideal& constraint) {
    if (constraint.trivially_zero()) return sets;
    std::vector<BasicConstructibleSet> out;
    for (auto& s : sets) {
        BasicConstructibleSet r{ideal_sum(s.I, lift_to(constraint, s.I.vars)), s.h,
                                s.certified};
        if (!set_is_empty(r)) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace gcad
