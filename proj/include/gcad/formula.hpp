#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"
#include "realalg.hpp"

namespace gcad {

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

// boolean combination of sign conditions "poly rel 0"
struct FormulaNode {
    enum class Kind { Atom, And, Or, Not };
    Kind kind = Kind::Atom;
    Polynomial poly;  // Atom payload
    Rel rel = Rel::Eq;
    std::vector<FormulaNode> kids;  // And/Or: >= 1, Not: exactly 1
};

// Closed prenex formula (Q_1 v_1)...(Q_n v_n) matrix; the quantifier prefix
// fixes the variable order, last variable innermost.
struct PrenexFormula {
    VarsPtr vars;
    std::vector<bool> universal;  // per variable, true = forall
    FormulaNode matrix;
};

// Text form: "A p A q E x (x^3 + p*x + q = 0)" with A = forall, E = exists;
// atoms are "poly rel poly" with rel in {=, !=, <, <=, >, >=}, combined with
// and/or/not and parentheses. Throws std::runtime_error on malformed input or
// on a free variable (parse_poly rejects names outside the prefix).
PrenexFormula parse_formula(const std::string& text);

// Exact truth of a quantifier-free formula at an algebraic point covering all
// variables of its atoms.
bool eval_formula(const FormulaNode& node, const std::vector<RealAlgebraicNumber>& point);

}  // namespace gcad
