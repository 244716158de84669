#include "gcad/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gcad {

Polynomial Polynomial::derivative(std::size_t v) const {
    Polynomial r(vars);
    for (auto& [m, c] : terms) {
        if (m.e[v] == 0) continue;
        Monomial d = m;
        d.e[v] -= 1;
        r.add_term(d, c * Rational((long)m.e[v]));
    }
    return r;
}

Polynomial Polynomial::subst(std::size_t v, const Polynomial& val) const {
    // Horner over the coefficient list in v
    auto cs = coeffs_in(v);
    Polynomial r = Polynomial::zero(vars);
    for (std::size_t i = cs.size(); i-- > 0;) r = r * val + cs[i];
    return r;
}

Polynomial Polynomial::subst(std::size_t v, const Rational& val) const {
    Polynomial r(vars);
    // group by monomial-without-v, multiply coefficient by val^e
    for (auto& [m, c] : terms) {
        Monomial d = m;
        unsigned e = d.e[v];
        d.e[v] = 0;
        r.add_term(d, e ? c * pow_rat(val, e) : c);
    }
    return r;
}

Polynomial Polynomial::rename_into(const VarsPtr& newvars) const {
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        auto it = std::find(newvars->begin(), newvars->end(), (*vars)[i]);
        if (it == newvars->end()) {
            if (uses_var(i))
                throw std::invalid_argument("rename_into: variable " + (*vars)[i] +
                                            " missing from target context");
            map[i] = std::size_t(-1);
        } else {
            map[i] = std::size_t(it - newvars->begin());
        }
    }
    Polynomial r(newvars);
    for (auto& [m, c] : terms) {
        Monomial d(newvars->size());
        for (std::size_t i = 0; i < nvars(); ++i)
            if (m.e[i]) d.e[map[i]] = m.e[i];
        r.terms.emplace(std::move(d), c);
    }
    return r;
}

std::vector<Polynomial> Polynomial::coeffs_in(std::size_t v) const {
    std::vector<Polynomial> cs(degree_in(v) + 1, Polynomial::zero(vars));
    if (is_zero()) return cs;
    for (auto& [m, c] : terms) {
        Monomial d = m;
        unsigned e = d.e[v];
        d.e[v] = 0;
        cs[e].add_term(d, c);
    }
    return cs;
}

Polynomial Polynomial::from_coeffs_in(VarsPtr vars, std::size_t v,
                                      const std::vector<Polynomial>& cs) {
    Polynomial r(vars);
    for (std::size_t e = 0; e < cs.size(); ++e) {
        for (auto& [m, c] : cs[e].terms) {
            Monomial d = m;
            d.e[v] += (unsigned)e;
            r.add_term(d, c);
        }
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    Rational acc(0);
    for (auto& [m, c] : terms) {
        Rational t = c;
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) t *= pow_rat(point.at(i), m.e[i]);
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::canonicalized() const {
    if (is_zero()) return *this;
    Integer den_lcm(1), num_gcd(0);
    for (auto& [m, c] : terms) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational s = Rational(den_lcm) / Rational(num_gcd);
    if (sign(leading(MonomialOrder::grevlex()).second) < 0) s = -s;
    return (*this) * s;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    // order terms descending grevlex for a stable, readable form
    std::vector<const std::pair<const Monomial, Rational>*> ts;
    for (auto& t : terms) ts.push_back(&t);
    MonomialOrder g = MonomialOrder::grevlex();
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
        return compare_monomials(a->first, b->first, g) > 0;
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : ts) {
        const Monomial& m = t->first;
        Rational c = t->second;
        bool neg = sign(c) < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        Rational a = abs_val(c);
        std::string mono;
        {
            std::ostringstream ms;
            bool firstv = true;
            for (std::size_t i = 0; i < m.e.size(); ++i) {
                if (!m.e[i]) continue;
                if (!firstv) ms << "*";
                firstv = false;
                ms << (*vars)[i];
                if (m.e[i] > 1) ms << "^" << m.e[i];
            }
            mono = ms.str();
        }
        if (mono.empty()) {
            out << to_string(a);
        } else if (a == 1) {
            out << mono;
        } else {
            out << to_string(a) << "*" << mono;
        }
    }
    return out.str();
}

DivRemResult divrem(const Polynomial& f, const std::vector<Polynomial>& divisors,
                    const MonomialOrder& T) {
    for (auto& d : divisors)
        if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    DivRemResult res;
    res.quotients.assign(divisors.size(), Polynomial::zero(f.vars));
    res.remainder = Polynomial::zero(f.vars);
    std::vector<std::pair<Monomial, Rational>> lts;
    lts.reserve(divisors.size());
    for (auto& d : divisors) lts.push_back(d.leading(T));

    Polynomial p = f;
    while (!p.is_zero()) {
        auto [lm, lc] = p.leading(T);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!lts[i].first.divides(lm)) continue;
            Monomial q = lm / lts[i].first;
            Rational c = lc / lts[i].second;
            res.quotients[i].add_term(q, c);
            p -= divisors[i] * Polynomial::monomial(f.vars, q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            res.remainder.add_term(lm, lc);
            p.terms.erase(lm);
        }
    }
    return res;
}

bool try_divide_exact(const Polynomial& f, const Polynomial& g, Polynomial& out) {
    if (g.is_zero()) return false;
    if (f.is_zero()) {
        out = Polynomial::zero(f.vars);
        return true;
    }
    auto r = divrem(f, {g}, MonomialOrder::grevlex());
    if (!r.remainder.is_zero()) return false;
    out = r.quotients[0];
    return true;
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    Polynomial out;
    if (!try_divide_exact(f, g, out)) throw std::logic_error("divide_exact: not divisible");
    return out;
}

namespace {

// pseudo-remainder of a by b w.r.t. v: lc(b)^(da-db+1) * a = q*b + r
Polynomial prem(const Polynomial& a, const Polynomial& b, std::size_t v) {
    unsigned db = b.degree_in(v);
    const Polynomial lb = b.coeffs_in(v)[db];
    Polynomial r = a;
    while (!r.is_zero()) {
        unsigned da = r.degree_in(v);
        if (da < db) break;
        Polynomial lr = r.coeffs_in(v)[da];
        Monomial shift(a.vars->size());
        shift.e[v] = da - db;
        r = r * lb - b * Polynomial::monomial(a.vars, shift, Rational(1)) * lr;
    }
    return r;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t v) {
    if (p.is_zero()) return p;
    Polynomial c = content_in(p, v);
    return divide_exact(p, c);
}

}  // namespace

Polynomial content_in(const Polynomial& p, std::size_t v) {
    auto cs = p.coeffs_in(v);
    Polynomial g = Polynomial::zero(p.vars);
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) g = Polynomial::constant(p.vars, Rational(1));
    return g;
}

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero()) return q.canonicalized();
    if (q.is_zero()) return p.canonicalized();
    if (p.is_constant() || q.is_constant())
        return Polynomial::constant(p.vars, Rational(1));

    // pick the highest-index variable used by either
    std::size_t v = 0;
    bool found = false;
    for (std::size_t i = p.nvars(); i-- > 0;) {
        if (p.uses_var(i) || q.uses_var(i)) {
            v = i;
            found = true;
            break;
        }
    }
    if (!found) return Polynomial::constant(p.vars, Rational(1));

    if (!p.uses_var(v)) return poly_gcd(p, content_in(q, v));
    if (!q.uses_var(v)) return poly_gcd(content_in(p, v), q);

    Polynomial cp = content_in(p, v), cq = content_in(q, v);
    Polynomial a = divide_exact(p, cp), b = divide_exact(q, cq);
    Polynomial c = poly_gcd(cp, cq);

    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    // primitive PRS
    while (true) {
        Polynomial r = prem(a, b, v);
        if (r.is_zero()) {
            return (c * primitive_part_in(b, v)).canonicalized();
        }
        if (r.degree_in(v) == 0) {
            return c.canonicalized();
        }
        a = b;
        b = primitive_part_in(r, v).canonicalized();
    }
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part of zero");
    if (p.is_constant()) return Polynomial::constant(p.vars, Rational(1));
    // char 0: gcd(p, all partial derivatives) = product of primes^(mult-1)
    Polynomial g = p;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        if (!p.uses_var(v)) continue;
        g = poly_gcd(g, p.derivative(v));
        if (g.is_constant()) break;
    }
    if (g.is_constant()) return p.canonicalized();
    return divide_exact(p, g).canonicalized();
}

bool poly_is_square(const Polynomial& p) {
    if (p.is_zero()) return true;
    if (p.is_constant()) {
        Rational c = p.constant_value();
        return sign(c) > 0 && is_perfect_square(c.get_num()) && is_perfect_square(c.get_den());
    }
    Polynomial pc = p;  // peel content
    Polynomial s = squarefree_part(pc);
    Polynomial s2 = s * s, q;
    if (!try_divide_exact(pc, s2, q)) return false;
    // rational scale between pc and the integer-primitive structure is absorbed
    // recursively: q is again a polynomial, same test applies
    return poly_is_square(q);
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    unsigned dp = p.degree_in(var), dq = q.degree_in(var);
    if (dp == 0 && dq == 0) return Polynomial::constant(p.vars, Rational(1));
    if (dp == 0) return p.pow(dq);
    if (dq == 0) return q.pow(dp);

    auto pc = p.coeffs_in(var), qc = q.coeffs_in(var);
    std::size_t n = dp + dq;
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial::zero(p.vars)));
    for (unsigned r = 0; r < dq; ++r)
        for (unsigned j = 0; j <= dp; ++j) M[r][r + j] = pc[dp - j];
    for (unsigned r = 0; r < dp; ++r)
        for (unsigned j = 0; j <= dq; ++j) M[dq + r][r + j] = qc[dq - j];

    // Bareiss fraction-free elimination with row pivoting
    Polynomial prev = Polynomial::constant(p.vars, Rational(1));
    int det_sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t piv = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (!M[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv == k) return Polynomial::zero(p.vars);
            std::swap(M[k], M[piv]);
            det_sign = -det_sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                M[i][j] = divide_exact(t, prev);
            }
            M[i][k] = Polynomial::zero(p.vars);
        }
        prev = M[k][k];
    }
    Polynomial det = M[n - 1][n - 1];
    return det_sign < 0 ? -det : det;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
    const VarsPtr& vars;
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(i) +
                                    ": " + msg + " in \"" + s + "\"");
    }

    Polynomial expr() {
        skip();
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Polynomial r = term();
        if (neg) r = -r;
        while (true) {
            skip();
            if (eat('+')) {
                r += term();
            } else if (eat('-')) {
                r -= term();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial term() {
        Polynomial r = factor();
        while (eat('*')) r = r * factor();
        return r;
    }

    Polynomial factor() {
        Polynomial b = base();
        skip();
        if (eat('^')) {
            skip();
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) fail("expected exponent");
            unsigned e = (unsigned)std::stoul(s.substr(i, j - i));
            i = j;
            return b.pow(e);
        }
        return b;
    }

    Polynomial base() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            Polynomial r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == '-') {
            ++i;
            return -factor();
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            std::string num = s.substr(i, j - i);
            i = j;
            skip();
            if (i < s.size() && s[i] == '/') {
                ++i;
                skip();
                std::size_t k = i;
                while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
                if (k == i) fail("expected denominator digits");
                num += "/" + s.substr(i, k - i);
                i = k;
            }
            return Polynomial::constant(vars, parse_rational(num));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
                ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            auto it = std::find(vars->begin(), vars->end(), name);
            if (it == vars->end()) fail("unknown variable '" + name + "'");
            return Polynomial::variable(vars, std::size_t(it - vars->begin()));
        }
        fail("unexpected character");
    }
};

}  // namespace

Polynomial parse_poly(const VarsPtr& vars, const std::string& text) {
    Parser p{vars, text};
    Polynomial r = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace gcad
