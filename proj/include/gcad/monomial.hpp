#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gcad {

// Dense exponent vector, one entry per declared variable.
struct Monomial {
    std::vector<unsigned> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    unsigned total_degree() const { return std::accumulate(e.begin(), e.end(), 0u); }

    unsigned degree_in(std::size_t v) const { return e[v]; }
    bool is_one() const {
        for (unsigned x : e)
            if (x) return false;
        return true;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& m) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
        return r;
    }

    // quotient, caller guarantees divisibility
    Monomial operator/(const Monomial& m) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e.size(); ++i)
            if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e.size(); ++i)
            if (b.e[i] < r.e[i]) r.e[i] = b.e[i];
        return r;
    }

    bool operator==(const Monomial& m) const { return e == m.e; }
    bool operator!=(const Monomial& m) const { return e != m.e; }
    // storage order only (deterministic map iteration), not a monomial order
    bool operator<(const Monomial& m) const { return e < m.e; }
};

enum class OrderKind { Lex, GrevLex };

// A monomial order, possibly a block order. Variables [split, n) form the
// trailing block (the x-variables) and are compared first, matching
// T = T_x > T_y. split = 0 means a single block over all variables.
struct MonomialOrder {
    std::size_t split = 0;
    OrderKind kind_x = OrderKind::GrevLex;
    OrderKind kind_y = OrderKind::GrevLex;

    static MonomialOrder lex() { return {0, OrderKind::Lex, OrderKind::Lex}; }
    static MonomialOrder grevlex() { return {0, OrderKind::GrevLex, OrderKind::GrevLex}; }
    static MonomialOrder block(std::size_t split_index, OrderKind inner_x = OrderKind::GrevLex,
                               OrderKind inner_y = OrderKind::GrevLex) {
        return {split_index, inner_x, inner_y};
    }

    bool operator==(const MonomialOrder& o) const {
        return split == o.split && kind_x == o.kind_x && kind_y == o.kind_y;
    }
    bool operator<(const MonomialOrder& o) const {
        if (split != o.split) return split < o.split;
        if (kind_x != o.kind_x) return kind_x < o.kind_x;
        return kind_y < o.kind_y;
    }
};

namespace detail {

inline int cmp_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                     OrderKind kind) {
    if (kind == OrderKind::Lex) {
        for (std::size_t i = lo; i < hi; ++i) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        }
        return 0;
    }
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db) return da > db ? 1 : -1;
    // graded reverse lex: the last differing exponent, smaller wins
    for (std::size_t i = hi; i-- > lo;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace detail

// -1 / 0 / +1
inline int compare_monomials(const Monomial& m1, const Monomial& m2, const MonomialOrder& T) {
    if (m1.nvars() != m2.nvars()) throw std::invalid_argument("monomials from different contexts");
    const std::size_t n = m1.nvars();
    if (T.split > 0 && T.split < n) {
        if (int c = detail::cmp_range(m1, m2, T.split, n, T.kind_x)) return c;
        return detail::cmp_range(m1, m2, 0, T.split, T.kind_y);
    }
    return detail::cmp_range(m1, m2, 0, n, T.kind_x);
}

}  // namespace gcad
