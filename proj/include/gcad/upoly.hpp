#pragma once

#include <stdexcept>
#include <vector>

#include "polynomial.hpp"

namespace gcad {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
struct UPoly {
    std::vector<Rational> c;

    UPoly() = default;
    explicit UPoly(std::vector<Rational> cc) : c(std::move(cc)) { trim(); }

    void trim() {
        while (!c.empty() && sign(c.back()) == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; }
    const Rational& lc() const { return c.back(); }
    Rational coeff(std::size_t i) const { return i < c.size() ? c[i] : Rational(0); }

    static UPoly zero() { return UPoly(); }
    static UPoly constant(const Rational& r) { return UPoly({r}); }
    static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c) a = -a;
        return r;
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const Rational& s) {
        UPoly r = a;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

    Rational eval(const Rational& v) const {
        Rational r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * v + *it;
        return r;
    }

    UPoly derivative() const {
        if (c.size() <= 1) return zero();
        std::vector<Rational> r(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rational((long)i);
        return UPoly(std::move(r));
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / lc());
    }
};

inline std::pair<UPoly, UPoly> udivrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("udivrem: division by zero");
    UPoly r = a;
    std::vector<Rational> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1,
                            Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long k = r.degree() - b.degree();
        Rational f = r.lc() / b.lc();
        q[(std::size_t)k] += f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[(std::size_t)k + i] -= f * b.c[i];
        r.trim();
    }
    return {UPoly(std::move(q)), r};
}

// primitive integer coefficients: q * returned = u for some positive rational q
inline std::vector<Integer> upoly_primitive_z(const UPoly& u);

// primitive Euclidean algorithm over Z: pseudo-remainders with the content
// stripped after every division, which keeps the coefficients near minimal
// size (plain rational Euclid swells exponentially at high degree)
inline UPoly ugcd(UPoly a, UPoly b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    std::vector<Integer> A = upoly_primitive_z(a), B = upoly_primitive_z(b);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty()) {
        std::vector<Integer> R = A;
        const Integer lb = B.back();
        while (R.size() >= B.size()) {
            Integer lr = R.back();
            std::size_t k = R.size() - B.size();
            for (auto& x : R) x *= lb;
            for (std::size_t i = 0; i < B.size(); ++i) R[k + i] -= lr * B[i];
            while (!R.empty() && sign(R.back()) == 0) R.pop_back();
        }
        if (!R.empty()) {
            Integer g(0);
            for (auto& x : R) g = gcd(g, x);
            if (sign(R.back()) < 0) g = -g;
            for (auto& x : R) x /= g;
        }
        A = std::move(B);
        B = std::move(R);
    }
    std::vector<Rational> c(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) c[i] = Rational(A[i]);
    return UPoly(std::move(c)).monic();
}

inline UPoly usquarefree(const UPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p.monic();
    UPoly g = ugcd(p, p.derivative());
    return udivrem(p, g).first.monic();
}

// p restricted to a single variable v of a multivariate context
inline UPoly to_upoly(const Polynomial& p, std::size_t v) {
    std::vector<Rational> c;
    for (auto& [m, a] : p.terms) {
        for (std::size_t u = 0; u < m.e.size(); ++u)
            if (u != v && m.e[u] != 0)
                throw std::invalid_argument("to_upoly: polynomial is not univariate in v");
        if (m.e[v] >= c.size()) c.resize(m.e[v] + 1, Rational(0));
        c[m.e[v]] = a;
    }
    return UPoly(std::move(c));
}

inline Polynomial from_upoly(const UPoly& u, const VarsPtr& vars, std::size_t v) {
    Polynomial p = Polynomial::zero(vars);
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (sign(u.c[i]) == 0) continue;
        Monomial m(vars->size());
        m.e[v] = (unsigned)i;
        p.add_term(m, u.c[i]);
    }
    return p;
}

// primitive integer coefficients: q * returned = u for some positive rational q
inline std::vector<Integer> upoly_primitive_z(const UPoly& u) {
    if (u.is_zero()) return {};
    Integer den(1), gnum(0);
    for (auto& r : u.c) den = lcm(den, r.get_den());
    std::vector<Integer> z(u.c.size());
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        Rational s = u.c[i] * Rational(den);
        z[i] = s.get_num();
        gnum = gcd(gnum, z[i]);
    }
    if (sign(z.back()) < 0) gnum = -gnum;
    for (auto& a : z) a /= gnum;
    return z;
}

inline UPoly upoly_from_z(const std::vector<Integer>& z) {
    std::vector<Rational> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return UPoly(std::move(c));
}

}  // namespace gcad
