#include "gcad/groebner.hpp"

#include <algorithm>

#include "gcad/upoly.hpp"
#include <map>
#include <set>
#include <sstream>

namespace gcad {

namespace {

std::string order_key(const MonomialOrder& T) {
    std::ostringstream o;
    o << T.split << ':' << int(T.kind_x) << ':' << int(T.kind_y);
    return o.str();
}

std::string gens_key(const std::vector<Polynomial>& gens) {
    std::vector<std::string> parts;
    parts.reserve(gens.size());
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        parts.push_back(g.canonicalized().str());
    }
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::ostringstream o;
    for (auto& p : parts) o << p << ';';
    return o.str();
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

// descending w.r.t. T, so begin() of a map is the leading term
struct DescOrder {
    const MonomialOrder* T;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_monomials(a, b, *T) > 0;
    }
};

using LeadTerms = std::vector<std::pair<Monomial, Rational>>;

// remainder of f modulo G up to a scalar. The pending terms live in a map
// ordered by T (leading monomial = begin(), no rescans), terms once found
// irreducible move to a settled map and are never reexamined, and the whole
// intermediate is rescaled to primitive integer coefficients after every
// pseudo-reduction step p := lc_i·p − lc·x^q·g_i so rational division never
// swells the coefficients. head_only stops at the first irreducible leading
// monomial, which is enough to decide zero-ness of an S-polynomial remainder
// (a zero remainder arises through head reductions alone).
Polynomial gb_reduce(const Polynomial& f, const std::vector<Polynomial>& G,
                     const LeadTerms& lts, const MonomialOrder& T, bool head_only) {
    std::map<Monomial, Rational, DescOrder> work(DescOrder{&T});
    for (auto& [m, c] : f.terms) work.emplace(m, c);
    std::map<Monomial, Rational> settled;
    auto strip = [&]() {
        Integer num(0), den(1);
        for (auto& [m, c] : work) {
            num = gcd(num, c.get_num());
            den = lcm(den, c.get_den());
        }
        for (auto& [m, c] : settled) {
            num = gcd(num, c.get_num());
            den = lcm(den, c.get_den());
        }
        if (sign(num) == 0) return;
        Rational s = Rational(den) / Rational(num);
        if (s == 1) return;
        for (auto& [m, c] : work) c *= s;
        for (auto& [m, c] : settled) c *= s;
    };
    strip();
    while (!work.empty()) {
        auto it = work.begin();
        std::size_t ri = G.size();
        for (std::size_t i = 0; i < G.size(); ++i)
            if (lts[i].first.divides(it->first)) {
                ri = i;
                break;
            }
        if (ri == G.size()) {
            if (head_only) break;
            settled.emplace(it->first, it->second);
            work.erase(it);
            continue;
        }
        Monomial lm = it->first;
        Rational lc = it->second;
        work.erase(it);
        const Rational& glc = lts[ri].second;
        for (auto& [m, c] : work) c *= glc;
        for (auto& [m, c] : settled) c *= glc;
        Monomial q = lm / lts[ri].first;
        for (auto& [mg, cg] : G[ri].terms) {
            Monomial m2 = mg * q;
            if (m2 == lm) continue;  // heads cancel exactly
            Rational d = -(cg * lc);
            if (auto st = settled.find(m2); st != settled.end()) {
                st->second += d;
                if (sign(st->second) == 0) settled.erase(st);
                continue;
            }
            auto [wt, fresh] = work.emplace(m2, d);
            if (!fresh) {
                wt->second += d;
                if (sign(wt->second) == 0) work.erase(wt);
            }
        }
        strip();
    }
    Polynomial r = Polynomial::zero(f.vars);
    for (auto& [m, c] : settled) r.add_term(m, c);
    for (auto& [m, c] : work) r.add_term(m, c);
    return r;
}


std::vector<Polynomial> buchberger(std::vector<Polynomial> gens, const MonomialOrder& T) {
    std::vector<Polynomial> G;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        G.push_back(g.canonicalized());
    }
    if (G.empty()) return {};
    for (auto& g : G)
        if (g.is_constant()) return {Polynomial::constant(g.vars, Rational(1))};

    // k[x] is a PID: the reduced basis is the gcd
    if (G[0].vars->size() == 1) {
        UPoly u = to_upoly(G[0], 0);
        for (std::size_t i = 1; i < G.size(); ++i) u = ugcd(u, to_upoly(G[i], 0));
        if (u.degree() == 0) return {Polynomial::constant(G[0].vars, Rational(1))};
        return {from_upoly(u, G[0].vars, 0).canonicalized()};
    }

    LeadTerms lts;
    for (auto& g : G) lts.push_back(g.leading(T));
    auto lm = [&](std::size_t i) -> const Monomial& { return lts[i].first; };

    std::vector<Pair> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k, Monomial::lcm(lm(i), lm(k))});
    };
    for (std::size_t k = 1; k < G.size(); ++k) push_pairs(k);

    std::set<std::pair<std::size_t, std::size_t>> done;

    while (!pairs.empty()) {
        // normal strategy: smallest lcm w.r.t. T
        std::size_t best = 0;
        for (std::size_t t = 1; t < pairs.size(); ++t)
            if (compare_monomials(pairs[t].lcm, pairs[best].lcm, T) < 0) best = t;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + (long)best);
        done.insert({pr.i, pr.j});

        // first criterion: coprime leading monomials
        if (pr.lcm == lm(pr.i) * lm(pr.j)) continue;
        // second (chain) criterion
        {
            bool skip = false;
            for (std::size_t k = 0; k < G.size() && !skip; ++k) {
                if (k == pr.i || k == pr.j) continue;
                if (!lm(k).divides(pr.lcm)) continue;
                auto key1 = std::minmax(pr.i, k), key2 = std::minmax(pr.j, k);
                if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                    skip = true;
            }
            if (skip) continue;
        }

        Polynomial s =
            G[pr.i] * Polynomial::monomial(G[pr.i].vars, pr.lcm / lm(pr.i), lts[pr.j].second) -
            G[pr.j] * Polynomial::monomial(G[pr.j].vars, pr.lcm / lm(pr.j), lts[pr.i].second);
        Polynomial r = gb_reduce(s, G, lts, T, true);
        if (r.is_zero()) continue;
        // tail-reduce before inserting: unreduced tails breed ever larger
        // S-polynomials downstream
        r = gb_reduce(r, G, lts, T, false).canonicalized();
        if (r.is_constant()) return {Polynomial::constant(r.vars, Rational(1))};
        G.push_back(r);
        lts.push_back(r.leading(T));
        push_pairs(G.size() - 1);
    }

    // minimalize: drop elements whose LM is divisible by another's LM
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = 0; j < G.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (lm(j).divides(lm(i)) && !(lm(i) == lm(j) && j > i)) keep[i] = false;
        }
    }
    std::vector<Polynomial> M;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) M.push_back(G[i]);

    // inter-reduce to the reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < M.size(); ++i) {
            std::vector<Polynomial> others;
            LeadTerms olts;
            for (std::size_t j = 0; j < M.size(); ++j)
                if (j != i) {
                    others.push_back(M[j]);
                    olts.push_back(M[j].leading(T));
                }
            Polynomial r = others.empty() ? M[i] : gb_reduce(M[i], others, olts, T, false);
            r = r.is_zero() ? r : r.canonicalized();
            if (r != M[i]) {
                changed = true;
                if (r.is_zero()) {
                    M.erase(M.begin() + (long)i);
                    --i;
                } else {
                    M[i] = r;
                }
            }
        }
    }
    std::sort(M.begin(), M.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare_monomials(a.leading(T).first, b.leading(T).first, T) < 0;
    });
    return M;
}

}  // namespace

const std::vector<Polynomial>& reduced_groebner(const Ideal& I, const MonomialOrder& T) {
    static std::map<std::string, std::vector<Polynomial>> memo;
    std::string ctx;
    if (I.vars)
        for (auto& v : *I.vars) ctx += v + ',';
    std::string key = ctx + '|' + order_key(T) + '|' + gens_key(I.gens);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    // non-grevlex orders are seeded with the (cheap, memoized) grevlex
    // basis: the order change converges far faster than Buchberger from the
    // raw generators
    std::vector<Polynomial> gens = I.gens;
    if (!(T == MonomialOrder::grevlex())) {
        auto& g0 = reduced_groebner(I, MonomialOrder::grevlex());
        if (!g0.empty()) gens = g0;
    }
    auto gb = buchberger(gens, T);
    return memo.emplace(std::move(key), std::move(gb)).first->second;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G,
                       const MonomialOrder& T) {
    if (G.empty()) return f;
    return divrem(f, G, T).remainder;
}

bool contains_one(const Ideal& I) {
    for (auto& g : I.gens)
        if (!g.is_zero() && g.is_constant()) return true;
    auto& gb = reduced_groebner(I, MonomialOrder::grevlex());
    return gb.size() == 1 && gb[0].is_constant();
}

Ideal elimination_ideal(const Ideal& I, std::size_t keep) {
    const std::size_t n = I.vars->size();
    Ideal out(I.vars);
    if (keep >= n) {
        out.gens = I.gens;
        return out;
    }
    MonomialOrder T = keep == 0 ? MonomialOrder::grevlex() : MonomialOrder::block(keep);
    for (auto& g : reduced_groebner(I, T)) {
        bool in_y = true;
        for (std::size_t v = keep; v < n && in_y; ++v)
            if (g.uses_var(v)) in_y = false;
        if (in_y) out.gens.push_back(g);
    }
    if (keep == 0) {
        // eliminating everything: either <1> or <0>
        if (!out.gens.empty()) out.gens = {Polynomial::constant(I.vars, Rational(1))};
    }
    return out;
}

namespace {

bool in_span(const Polynomial& g, const std::vector<Polynomial>& Jgb) {
    if (g.is_zero()) return true;
    if (Jgb.empty()) return false;
    return normal_form(g, Jgb, MonomialOrder::grevlex()).is_zero();
}

Monomial x_part(const Monomial& m, std::size_t split) {
    Monomial r(m.e.size());
    for (std::size_t v = split; v < m.e.size(); ++v) r.e[v] = m.e[v];
    return r;
}

}  // namespace

Staircase staircase(const std::vector<Polynomial>& G, const std::vector<Polynomial>& Jgb,
                    std::size_t split, const MonomialOrder& T) {
    const std::size_t n = G.empty() ? (Jgb.empty() ? 0 : Jgb[0].nvars()) : G[0].nvars();
    if (n == 0) {
        // no generators at all: the quotient is the full polynomial ring
        Staircase st;
        st.finite = false;
        return st;
    }
    std::vector<Monomial> xlms;
    for (auto& g : G) {
        if (in_span(g, Jgb)) continue;
        xlms.push_back(x_part(g.leading(T).first, split));
    }
    Staircase st;
    // finite iff every x variable has a pure-power leading monomial
    std::vector<long> bound(n, -1);
    for (std::size_t v = split; v < n; ++v) {
        for (auto& m : xlms) {
            bool pure = m.e[v] > 0;
            for (std::size_t u = split; u < n && pure; ++u)
                if (u != v && m.e[u] > 0) pure = false;
            if (pure && (bound[v] < 0 || (long)m.e[v] < bound[v])) bound[v] = (long)m.e[v];
        }
        if (bound[v] < 0) {
            st.finite = false;
            return st;
        }
    }
    st.finite = true;
    // enumerate monomials under the bounds, filter by divisibility
    std::vector<Monomial> out;
    Monomial cur(n);
    std::vector<std::size_t> xvars;
    for (std::size_t v = split; v < n; ++v) xvars.push_back(v);
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == xvars.size()) {
            for (auto& m : xlms)
                if (m.divides(cur)) return;
            out.push_back(cur);
            return;
        }
        std::size_t v = xvars[idx];
        for (long e = 0; e < bound[v]; ++e) {
            cur.e[v] = (unsigned)e;
            self(self, idx + 1);
        }
        cur.e[v] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return compare_monomials(a, b, T) < 0; });
    st.monomials = std::move(out);
    return st;
}

std::vector<Polynomial> lc_factors(const std::vector<Polynomial>& G,
                                   const std::vector<Polynomial>& Jgb, std::size_t split,
                                   const MonomialOrder& T) {
    std::vector<Polynomial> factors;
    std::set<std::string> seen;
    for (auto& g : G) {
        if (in_span(g, Jgb)) continue;
        Monomial xlm = x_part(g.leading(T).first, split);
        Polynomial lc(g.vars);
        for (auto& [m, c] : g.terms)
            if (x_part(m, split) == xlm) {
                Monomial ym = m / xlm;
                lc.add_term(ym, c);
            }
        if (lc.is_constant()) continue;
        Polynomial sf = squarefree_part(lc);
        if (sf.is_constant()) continue;
        if (seen.insert(sf.str()).second) factors.push_back(sf);
    }
    return factors;
}

std::string fresh_var_name(const VarList& vars, const std::string& base) {
    auto taken = [&](const std::string& s) {
        return std::find(vars.begin(), vars.end(), s) != vars.end();
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
        std::string s = base + std::to_string(i);
        if (!taken(s)) return s;
    }
}

bool radical_membership(const Polynomial& f, const Ideal& I) {
    if (f.is_zero()) return true;
    VarList ext = *I.vars;
    ext.push_back(fresh_var_name(ext, "zrad_"));
    VarsPtr newvars = make_vars(ext);
    Ideal J(newvars);
    for (auto& g : I.gens)
        if (!g.is_zero()) J.gens.push_back(g.rename_into(newvars));
    Polynomial z = Polynomial::variable(newvars, newvars->size() - 1);
    J.gens.push_back(z * f.rename_into(newvars) - Polynomial::constant(newvars, Rational(1)));
    return contains_one(J);
}

std::string ideal_key(const Ideal& I) {
    std::ostringstream o;
    for (auto& g : reduced_groebner(I, MonomialOrder::grevlex())) o << g.str() << ';';
    return o.str();
}

bool ideal_equal(const Ideal& I1, const Ideal& I2) {
    return reduced_groebner(I1, MonomialOrder::grevlex()) ==
           reduced_groebner(I2, MonomialOrder::grevlex());
}

Ideal ideal_sum(const Ideal& I1, const Ideal& I2) {
    Ideal r(I1.vars, I1.gens);
    for (auto& g : I2.gens)
        if (!g.is_zero()) r.gens.push_back(g);
    return r;
}

Ideal ideal_sum(const Ideal& I1, const std::vector<Polynomial>& extra) {
    Ideal r(I1.vars, I1.gens);
    for (auto& g : extra)
        if (!g.is_zero()) r.gens.push_back(g);
    return r;
}

Ideal lift_ideal(const Ideal& I, const VarsPtr& newvars) {
    Ideal r(newvars);
    for (auto& g : I.gens)
        if (!g.is_zero()) r.gens.push_back(g.rename_into(newvars));
    return r;
}

}  // namespace gcad
