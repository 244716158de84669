#include "gcad/fiberclass.hpp"

#include <set>
#include <stdexcept>

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

struct Classifier {
    std::size_t split;
    VarsPtr yvars;
    std::vector<Region> out;

    void run(const Ideal& I, const Ideal& J, const Polynomial& h, bool certified,
             std::set<std::string> path = {}) {
        std::string key = ideal_key(I) + "#" + ideal_key(J) + "#" + h.str();
        if (!path.insert(key).second)
            throw std::logic_error("fiber_classification: recursion revisited a state");
        if (contains_one(I)) return;

        const VarsPtr& vars = I.vars;
        // dominance: does I contract to J over the base?
        Ideal Jc = elimination_ideal(I, split);
        if (!ideal_equal(Jc, J)) {
            auto comps = minimal_primes(to_y(Jc, yvars));
            for (auto& c : comps) {
                Ideal Ji(vars);
                for (auto& g : c.ideal.gens) Ji.gens.push_back(g.rename_into(vars));
                run(ideal_sum(I, Ji), Ji, h, certified && c.certified, path);
            }
            return;
        }

        MonomialOrder T = MonomialOrder::block(split);
        const auto& G = reduced_groebner(I, T);
        const auto& Jgb = reduced_groebner(J, MonomialOrder::grevlex());
        Staircase st = staircase(G, Jgb, split, T);

        if (!st.finite) {
            Ideal Ih = ideal_sum(I, {h});
            if (contains_one(Ih)) {
                auto wf = lc_factors(G, Jgb, split, T);
                Polynomial w = Polynomial::constant(vars, Rational(1));
                for (auto& f : wf) w = w * f;
                Region r;
                r.a = to_y(J, yvars);
                r.b = w.is_constant() ? Ideal::one(yvars)
                                      : Ideal(yvars, {w.rename_into(yvars)});
                r.count = {true, 0};
                r.certified = certified;
                out.push_back(r);
                if (!w.is_constant()) recurse_on_w(I, J, h, w, certified, path);
                return;
            }
            // Rabinowitsch: saturate by h in an extended context, then h := 1
            VarList ext = *vars;
            ext.push_back(fresh_var_name(ext, "zrab_"));
            VarsPtr evars = make_vars(ext);
            Ideal E(evars);
            for (auto& g : I.gens)
                if (!g.is_zero()) E.gens.push_back(g.rename_into(evars));
            Polynomial z = Polynomial::variable(evars, evars->size() - 1);
            E.gens.push_back(z * h.rename_into(evars) -
                             Polynomial::constant(evars, Rational(1)));
            Ideal Je(evars);
            for (auto& g : J.gens)
                if (!g.is_zero()) Je.gens.push_back(g.rename_into(evars));
            run(E, Je, Polynomial::constant(evars, Rational(1)), certified, path);
            return;
        }

        HermiteContext ctx = make_hermite_context(I, J, split);
        HermiteForm H = hermite_matrix(ctx, h);
        std::size_t s = ctx.basis.size();
        std::vector<Ideal> minors(s + 2);
        for (std::size_t i = 0; i <= s + 1; ++i) minors[i] = minors_ideal(H, i);
        for (std::size_t i = 0; i <= s; ++i) {
            Region r;
            r.a = to_y(ideal_sum(minors[i + 1], J), yvars);
            Ideal b(yvars);
            if (ctx.w.is_constant()) {
                b = to_y(minors[i], yvars);
            } else {
                Polynomial wy = ctx.w.rename_into(yvars);
                for (auto& g : minors[i].gens) b.gens.push_back(g.rename_into(yvars) * wy);
                if (minors[i].gens.empty() && contains_one(minors[i]))
                    b.gens.push_back(wy);
            }
            r.b = b;
            r.count = {false, i};
            r.certified = certified;
            out.push_back(r);
        }
        if (!ctx.w.is_constant()) recurse_on_w(I, J, h, ctx.w, certified, path);
    }

    void recurse_on_w(const Ideal& I, const Ideal& J, const Polynomial& h, const Polynomial& w,
                      bool certified, const std::set<std::string>& path) {
        Ideal Jw = to_y(ideal_sum(J, {w}), yvars);
        for (auto& c : minimal_primes(Jw)) {
            Ideal Ji(I.vars);
            for (auto& g : c.ideal.gens) Ji.gens.push_back(g.rename_into(I.vars));
            run(ideal_sum(I, Ji), Ji, h, certified && c.certified, path);
        }
    }
};

}  // namespace

std::vector<Region> fiber_classification(const Ideal& I, const Ideal& J, const Polynomial& h,
                                         std::size_t split) {
    Classifier c;
    c.split = split;
    c.yvars = y_context(I.vars, split);
    c.run(I, J, h, true);
    return c.out;
}

FiberCount fiber_count_oracle(const std::vector<Polynomial>& system, const Polynomial& h) {
    if (system.empty()) return {true, 0};
    const VarsPtr& vars = system[0].vars;
    if (h.is_zero()) return {false, 0};
    Ideal I(vars);
    for (auto& g : system)
        if (!g.is_zero()) I.gens.push_back(g);
    if (I.gens.empty()) return {true, 0};
    if (!h.is_constant()) {
        VarList ext = *vars;
        ext.push_back(fresh_var_name(ext, "zsat_"));
        VarsPtr evars = make_vars(ext);
        Ideal E(evars);
        for (auto& g : I.gens) E.gens.push_back(g.rename_into(evars));
        Polynomial z = Polynomial::variable(evars, evars->size() - 1);
        E.gens.push_back(z * h.rename_into(evars) - Polynomial::constant(evars, Rational(1)));
        Ideal sat = elimination_ideal(E, vars->size());
        I = Ideal(vars);
        for (auto& g : sat.gens) I.gens.push_back(g.rename_into(vars));
        if (I.trivially_zero()) return {true, 0};
    }
    if (contains_one(I)) return {false, 0};
    try {
        HermiteContext ctx = make_hermite_context(I, Ideal::zero(vars), 0);
        HermiteForm H = hermite_matrix(ctx, Polynomial::constant(vars, Rational(1)));
        auto [rank, sig] = rank_signature_at(H, {});
        (void)sig;
        return {false, rank};
    } catch (const std::domain_error&) {
        return {true, 0};
    }
}

}  // namespace gcad
