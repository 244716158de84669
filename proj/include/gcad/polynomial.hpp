#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace gcad {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

inline VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarList>(std::move(names));
}

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in a deterministic storage order (plain exponent-vector
// comparison); monomial orders are applied on demand.
class Polynomial {
   public:
    VarsPtr vars;
    std::map<Monomial, Rational> terms;

    Polynomial() = default;
    explicit Polynomial(VarsPtr v) : vars(std::move(v)) {}

    static Polynomial zero(VarsPtr v) { return Polynomial(std::move(v)); }
    static Polynomial constant(VarsPtr v, const Rational& c) {
        Polynomial p(std::move(v));
        if (sign(c) != 0) p.terms.emplace(Monomial(p.vars->size()), c);
        return p;
    }
    static Polynomial variable(VarsPtr v, std::size_t idx) {
        Polynomial p(std::move(v));
        Monomial m(p.vars->size());
        m.e.at(idx) = 1;
        p.terms.emplace(std::move(m), Rational(1));
        return p;
    }
    static Polynomial monomial(VarsPtr v, Monomial m, const Rational& c) {
        Polynomial p(std::move(v));
        if (sign(c) != 0) p.terms.emplace(std::move(m), c);
        return p;
    }

    std::size_t nvars() const { return vars ? vars->size() : 0; }
    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_one());
    }
    Rational constant_value() const {
        if (terms.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
        return terms.begin()->second;
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (sign(c) == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (sign(it->second) == 0) terms.erase(it);
        }
    }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (auto& [m, c] : terms)
            if (m.e[v] > d) d = m.e[v];
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (auto& [m, c] : terms)
            if (m.total_degree() > d) d = m.total_degree();
        return d;
    }
    bool uses_var(std::size_t v) const {
        for (auto& [m, c] : terms)
            if (m.e[v] > 0) return true;
        return false;
    }

    std::pair<Monomial, Rational> leading(const MonomialOrder& T) const {
        if (terms.empty()) throw std::logic_error("leading term of zero polynomial");
        auto best = terms.begin();
        for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
            if (compare_monomials(it->first, best->first, T) > 0) best = it;
        return {best->first, best->second};
    }

    bool operator==(const Polynomial& q) const { return terms == q.terms; }
    bool operator!=(const Polynomial& q) const { return terms != q.terms; }

    Polynomial operator-() const {
        Polynomial r(vars);
        for (auto& [m, c] : terms) r.terms.emplace(m, -c);
        return r;
    }
    Polynomial operator+(const Polynomial& q) const {
        Polynomial r(*this);
        for (auto& [m, c] : q.terms) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& q) const {
        Polynomial r(*this);
        for (auto& [m, c] : q.terms) r.add_term(m, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& q) const {
        Polynomial r(vars);
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : q.terms) r.add_term(m1 * m2, c1 * c2);
        return r;
    }
    Polynomial operator*(const Rational& c) const {
        Polynomial r(vars);
        if (sign(c) == 0) return r;
        for (auto& [m, k] : terms) r.terms.emplace(m, k * c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& q) {
        for (auto& [m, c] : q.terms) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& q) {
        for (auto& [m, c] : q.terms) add_term(m, -c);
        return *this;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(vars, Rational(1));
        Polynomial b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Polynomial derivative(std::size_t v) const;
    Polynomial subst(std::size_t v, const Polynomial& val) const;
    Polynomial subst(std::size_t v, const Rational& val) const;
    // Map this polynomial into another context by variable name.
    Polynomial rename_into(const VarsPtr& newvars) const;
    // Dense coefficient list w.r.t. v (index = power of v); coefficients live
    // in the same context with v absent.
    std::vector<Polynomial> coeffs_in(std::size_t v) const;
    static Polynomial from_coeffs_in(VarsPtr vars, std::size_t v,
                                     const std::vector<Polynomial>& cs);

    Rational eval(const std::vector<Rational>& point) const;

    // Canonical form: integer coefficients with content 1, grevlex leading
    // coefficient positive. Zero stays zero.
    Polynomial canonicalized() const;

    std::string str() const;
};

struct DivRemResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

DivRemResult divrem(const Polynomial& f, const std::vector<Polynomial>& divisors,
                    const MonomialOrder& T);
bool try_divide_exact(const Polynomial& f, const Polynomial& g, Polynomial& out);
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q);
Polynomial squarefree_part(const Polynomial& p);
// content of p viewed in v: gcd of the coefficient polynomials
Polynomial content_in(const Polynomial& p, std::size_t v);
bool poly_is_square(const Polynomial& p);

// Sylvester determinant (fraction-free), p's rows first.
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var);

Polynomial parse_poly(const VarsPtr& vars, const std::string& text);

}  // namespace gcad
