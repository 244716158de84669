#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace gcad {

struct Ideal {
    VarsPtr vars;
    std::vector<Polynomial> gens;

    Ideal() = default;
    explicit Ideal(VarsPtr v) : vars(std::move(v)) {}
    Ideal(VarsPtr v, std::vector<Polynomial> g) : vars(std::move(v)), gens(std::move(g)) {}

    static Ideal zero(VarsPtr v) { return Ideal(std::move(v)); }
    static Ideal one(VarsPtr v) {
        Ideal i(v);
        i.gens.push_back(Polynomial::constant(v, Rational(1)));
        return i;
    }

    bool trivially_zero() const {
        for (auto& g : gens)
            if (!g.is_zero()) return false;
        return true;
    }
};

// Reduced Groebner basis (canonicalized primitive-integer generators, sorted
// ascending by leading monomial). Memoized globally on (generators, order).
const std::vector<Polynomial>& reduced_groebner(const Ideal& I, const MonomialOrder& T);

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G,
                       const MonomialOrder& T);

bool contains_one(const Ideal& I);

// I ∩ k[vars 0..keep), via a block order putting vars [keep..n) first.
// Result generators live in the same context but use only the kept variables.
Ideal elimination_ideal(const Ideal& I, std::size_t keep);

struct Staircase {
    bool finite = false;
    std::vector<Monomial> monomials;  // zero y-part, sorted ascending by T_x
};

// G reduced w.r.t. block order T with x-block [split, n); Jgb = grevlex GB of
// ⟨G⟩ ∩ k[y] used for the "g ∈ J" membership test.
Staircase staircase(const std::vector<Polynomial>& G, const std::vector<Polynomial>& Jgb,
                    std::size_t split, const MonomialOrder& T);

// leading coefficients (in k[y]) of G∖J w.r.t. T_x, square-freed per factor,
// constants dropped, deduplicated; the localization witness w as a factor list
std::vector<Polynomial> lc_factors(const std::vector<Polynomial>& G,
                                   const std::vector<Polynomial>& Jgb, std::size_t split,
                                   const MonomialOrder& T);

// true iff f vanishes on V(I) over the algebraic closure (1 ∈ I + <z f - 1>)
bool radical_membership(const Polynomial& f, const Ideal& I);

bool ideal_equal(const Ideal& I1, const Ideal& I2);

// canonical grevlex GB rendered as a deterministic string key
std::string ideal_key(const Ideal& I);

Ideal ideal_sum(const Ideal& I1, const Ideal& I2);
Ideal ideal_sum(const Ideal& I1, const std::vector<Polynomial>& extra);

// generators of I mapped into a larger context by variable name
Ideal lift_ideal(const Ideal& I, const VarsPtr& newvars);

// a fresh variable name not present in vars (base plus numeric suffix)
std::string fresh_var_name(const VarList& vars, const std::string& base);

}  // namespace gcad
