#include "gcad/hermite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gcad {

namespace {

Monomial x_part(const Monomial& m, std::size_t split) {
    Monomial r(m.e.size());
    for (std::size_t v = split; v < m.e.size(); ++v) r.e[v] = m.e[v];
    return r;
}

Monomial y_part(const Monomial& m, std::size_t split) {
    Monomial r(m.e.size());
    for (std::size_t v = 0; v < split; ++v) r.e[v] = m.e[v];
    return r;
}

struct LocCtx {
    const HermiteContext* H;
    bool has_w() const { return !H->w_factors.empty(); }

    Polynomial nf(const Polynomial& p) const {
        if (H->Jgb.empty()) return p;
        return normal_form(p, H->Jgb, MonomialOrder::grevlex());
    }

    void normalize(LocalizedElement& e) const {
        e.numerator = nf(e.numerator);
        if (e.numerator.is_zero()) {
            e.w_exponent = 0;
            return;
        }
        Polynomial q;
        while (e.w_exponent > 0 && try_divide_exact(e.numerator, H->w, q)) {
            e.numerator = q;
            --e.w_exponent;
        }
    }

    LocalizedElement add(const LocalizedElement& a, const LocalizedElement& b) const {
        unsigned e = std::max(a.w_exponent, b.w_exponent);
        LocalizedElement r;
        r.numerator = a.numerator * H->w.pow(e - a.w_exponent) +
                      b.numerator * H->w.pow(e - b.w_exponent);
        r.w_exponent = e;
        normalize(r);
        return r;
    }

    LocalizedElement mul(const LocalizedElement& a, const LocalizedElement& b) const {
        LocalizedElement r{a.numerator * b.numerator, a.w_exponent + b.w_exponent};
        normalize(r);
        return r;
    }
};

// a generator of G outside J, viewed as a polynomial in x over k[y]
struct Reducer {
    Monomial xlm;
    std::vector<std::pair<Monomial, Polynomial>> tail;  // x-monomial -> y-coefficient
    Polynomial clear_mult;                              // w^k / lc
    unsigned k = 0;                                     // w-power consumed per use
};

// element of the free module: x-monomial -> coefficient
using ModElem = std::map<Monomial, LocalizedElement>;

struct Engine {
    const HermiteContext& H;
    LocCtx L;
    std::vector<Reducer> reducers;
    MonomialOrder T;

    explicit Engine(const HermiteContext& ctx)
        : H(ctx), L{&ctx}, T(MonomialOrder::block(ctx.split)) {
        for (auto& g : H.G) {
            if (!H.Jgb.empty() &&
                normal_form(g, H.Jgb, MonomialOrder::grevlex()).is_zero())
                continue;
            Reducer r;
            r.xlm = x_part(g.leading(T).first, H.split);
            std::map<Monomial, Polynomial> groups;
            for (auto& [m, c] : g.terms) {
                Monomial xm = x_part(m, H.split);
                auto it = groups.find(xm);
                if (it == groups.end())
                    it = groups.emplace(xm, Polynomial::zero(g.vars)).first;
                it->second.add_term(y_part(m, H.split), c);
            }
            Polynomial lc = groups.at(r.xlm);
            for (auto& [xm, cp] : groups)
                if (!(xm == r.xlm)) r.tail.push_back({xm, cp});
            if (lc.is_constant()) {
                r.clear_mult = Polynomial::constant(g.vars, Rational(1) / lc.constant_value());
                r.k = 0;
            } else {
                Polynomial wk = Polynomial::constant(g.vars, Rational(1));
                bool done = false;
                for (unsigned k = 1; k <= (unsigned)lc.total_degree() + 1 && !done; ++k) {
                    wk = wk * H.w;
                    Polynomial q;
                    if (try_divide_exact(wk, lc, q)) {
                        r.clear_mult = q;
                        r.k = k;
                        done = true;
                    }
                }
                if (!done) throw std::logic_error("hermite: leading coefficient outside w powers");
            }
            reducers.push_back(std::move(r));
        }
    }

    void reduce(ModElem& e) const {
        for (;;) {
            // largest reducible x-monomial
            auto pick = e.end();
            const Reducer* red = nullptr;
            for (auto it = e.begin(); it != e.end(); ++it) {
                if (it->second.numerator.is_zero()) continue;
                for (auto& r : reducers) {
                    if (!r.xlm.divides(it->first)) continue;
                    if (pick == e.end() || compare_monomials(it->first, pick->first, T) > 0) {
                        pick = it;
                        red = &r;
                    }
                    break;
                }
            }
            if (pick == e.end()) break;
            Monomial q = pick->first / red->xlm;
            LocalizedElement mult{pick->second.numerator * red->clear_mult,
                                  pick->second.w_exponent + red->k};
            L.normalize(mult);
            e.erase(pick);
            for (auto& [xm, cp] : red->tail) {
                Monomial target = xm * q;
                LocalizedElement t{mult.numerator * cp, mult.w_exponent};
                t.numerator = -t.numerator;
                auto it = e.find(target);
                if (it == e.end()) {
                    L.normalize(t);
                    if (!t.numerator.is_zero()) e.emplace(target, std::move(t));
                } else {
                    it->second = L.add(it->second, t);
                    if (it->second.numerator.is_zero()) e.erase(it);
                }
            }
        }
        for (auto it = e.begin(); it != e.end();) {
            if (it->second.numerator.is_zero())
                it = e.erase(it);
            else
                ++it;
        }
    }

    // f * (module element with single basis monomial b), reduced
    ModElem times_poly(const Polynomial& f, const Monomial& b) const {
        ModElem e;
        for (auto& [m, c] : f.terms) {
            Monomial xm = x_part(m, H.split) * b;
            Polynomial yc = Polynomial::zero(f.vars);
            yc.add_term(y_part(m, H.split), c);
            LocalizedElement t{yc, 0};
            auto it = e.find(xm);
            if (it == e.end())
                e.emplace(xm, t);
            else
                it->second = L.add(it->second, t);
        }
        reduce(e);
        return e;
    }

    // matrix of multiplication by f, column j = f * basis[j]
    std::vector<std::vector<LocalizedElement>> mult_matrix(const Polynomial& f) const {
        std::size_t s = H.basis.size();
        std::vector<std::vector<LocalizedElement>> M(
            s, std::vector<LocalizedElement>(s, LocalizedElement{Polynomial::zero(H.vars), 0}));
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < s; ++i) index[H.basis[i]] = i;
        for (std::size_t j = 0; j < s; ++j) {
            ModElem col = times_poly(f, H.basis[j]);
            for (auto& [xm, c] : col) M.at(index.at(xm))[j] = c;
        }
        return M;
    }
};

using LocMatrix = std::vector<std::vector<LocalizedElement>>;

LocMatrix loc_matmul(const LocMatrix& A, const LocMatrix& B, const LocCtx& L,
                     const VarsPtr& vars) {
    std::size_t s = A.size();
    LocMatrix C(s, std::vector<LocalizedElement>(s, {Polynomial::zero(vars), 0}));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < s; ++k) {
            if (A[i][k].numerator.is_zero()) continue;
            for (std::size_t j = 0; j < s; ++j) {
                if (B[k][j].numerator.is_zero()) continue;
                C[i][j] = L.add(C[i][j], L.mul(A[i][k], B[k][j]));
            }
        }
    return C;
}

// determinant by fraction-free Bareiss with row pivoting; entries arbitrary
Polynomial poly_det(std::vector<std::vector<Polynomial>> M, const VarsPtr& vars) {
    std::size_t n = M.size();
    if (n == 0) return Polynomial::constant(vars, Rational(1));
    Polynomial prev = Polynomial::constant(vars, Rational(1));
    int sgn_flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t p = n;
            for (std::size_t r = k + 1; r < n; ++r)
                if (!M[r][k].is_zero()) {
                    p = r;
                    break;
                }
            if (p == n) return Polynomial::zero(vars);
            std::swap(M[k], M[p]);
            sgn_flip = -sgn_flip;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                M[i][j] = divide_exact(t, prev);
            }
        prev = M[k][k];
    }
    Polynomial d = M[n - 1][n - 1];
    return sgn_flip < 0 ? -d : d;
}

// Faddeev-LeVerrier characteristic polynomial coefficients (lambda^0..lambda^n)
// for a matrix over any Q-algebra represented by Polynomial entries
std::vector<Polynomial> fl_charpoly(const std::vector<std::vector<Polynomial>>& A,
                                    const VarsPtr& vars,
                                    const std::vector<Polynomial>& Jgb) {
    std::size_t n = A.size();
    auto nf = [&](const Polynomial& p) {
        return Jgb.empty() ? p : normal_form(p, Jgb, MonomialOrder::grevlex());
    };
    std::vector<Polynomial> c(n + 1, Polynomial::zero(vars));
    c[n] = Polynomial::constant(vars, Rational(1));
    std::vector<std::vector<Polynomial>> M(
        n, std::vector<Polynomial>(n, Polynomial::zero(vars)));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A*M_{k-1} + c_{n-k+1} I
        std::vector<std::vector<Polynomial>> AM(
            n, std::vector<Polynomial>(n, Polynomial::zero(vars)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Polynomial s = Polynomial::zero(vars);
                for (std::size_t l = 0; l < n; ++l) {
                    Polynomial m = M[l][j];
                    if (l == j) m = m + c[n - k + 1];
                    if (m.is_zero() || A[i][l].is_zero()) continue;
                    s = s + A[i][l] * m;
                }
                AM[i][j] = nf(s);
            }
        Polynomial tr = Polynomial::zero(vars);
        for (std::size_t i = 0; i < n; ++i) tr = tr + AM[i][i];
        c[n - k] = nf(tr * rat(-1, (long)k));
        M = std::move(AM);
    }
    return c;
}

}  // namespace

HermiteContext make_hermite_context(const Ideal& I, const Ideal& J, std::size_t split) {
    HermiteContext ctx;
    ctx.vars = I.vars;
    ctx.split = split;
    MonomialOrder T = MonomialOrder::block(split);
    ctx.G = reduced_groebner(I, T);
    ctx.J = J;
    ctx.Jgb = reduced_groebner(J, MonomialOrder::grevlex());
    Staircase st = staircase(ctx.G, ctx.Jgb, split, T);
    if (!st.finite) throw std::domain_error("hermite: infinite staircase");
    ctx.basis = st.monomials;
    ctx.w_factors = lc_factors(ctx.G, ctx.Jgb, split, T);
    ctx.w = Polynomial::constant(ctx.vars, Rational(1));
    for (auto& f : ctx.w_factors) ctx.w = ctx.w * f;
    return ctx;
}

LocalizedElement trace_of_multiplication(const Polynomial& f, const HermiteContext& ctx) {
    Engine eng(ctx);
    LocalizedElement tr{Polynomial::zero(ctx.vars), 0};
    for (auto& b : ctx.basis) {
        ModElem col = eng.times_poly(f, b);
        auto it = col.find(b);
        if (it != col.end()) tr = eng.L.add(tr, it->second);
    }
    return tr;
}

HermiteForm hermite_matrix(const HermiteContext& ctx, const Polynomial& h) {
    Engine eng(ctx);
    std::size_t s = ctx.basis.size();
    LocMatrix Mh = eng.mult_matrix(h);
    std::vector<LocMatrix> Mb(s);
    for (std::size_t i = 0; i < s; ++i) {
        Polynomial bi = Polynomial::zero(ctx.vars);
        bi.add_term(ctx.basis[i], Rational(1));
        Mb[i] = eng.mult_matrix(bi);
    }
    HermiteForm H;
    H.ctx = ctx;
    H.h = h;
    H.entries.assign(s, std::vector<LocalizedElement>(s, {Polynomial::zero(ctx.vars), 0}));
    for (std::size_t j = 0; j < s; ++j) {
        LocMatrix Pj = loc_matmul(Mb[j], Mh, eng.L, ctx.vars);
        for (std::size_t i = 0; i <= j; ++i) {
            LocalizedElement t{Polynomial::zero(ctx.vars), 0};
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t l = 0; l < s; ++l) {
                    if (Mb[i][k][l].numerator.is_zero() || Pj[l][k].numerator.is_zero()) continue;
                    t = eng.L.add(t, eng.L.mul(Mb[i][k][l], Pj[l][k]));
                }
            H.entries[i][j] = t;
            H.entries[j][i] = t;
        }
    }
    return H;
}

namespace {

// entries times w^m for the minimal uniform m, as plain polynomials
std::pair<std::vector<std::vector<Polynomial>>, unsigned> cleared_entries(const HermiteForm& H) {
    std::size_t s = H.entries.size();
    unsigned m = 0;
    for (auto& row : H.entries)
        for (auto& e : row) m = std::max(m, e.w_exponent);
    std::vector<std::vector<Polynomial>> A(
        s, std::vector<Polynomial>(s, Polynomial::zero(H.ctx.vars)));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            A[i][j] = H.entries[i][j].numerator * H.ctx.w.pow(m - H.entries[i][j].w_exponent);
    return {A, m};
}

}  // namespace

Ideal minors_ideal(const HermiteForm& H, std::size_t i) {
    std::size_t s = H.entries.size();
    const VarsPtr& vars = H.ctx.vars;
    if (i == 0) return Ideal::one(vars);
    if (i > s) return Ideal::zero(vars);
    auto [A, m] = cleared_entries(H);
    (void)m;
    // enumerate all i-subsets of rows and columns
    std::vector<std::size_t> rows(i), cols(i);
    for (std::size_t k = 0; k < i; ++k) rows[k] = k;
    Ideal out(vars);
    std::set<std::string> seen;
    auto next_comb = [s, i](std::vector<std::size_t>& c) {
        for (std::size_t k = i; k-- > 0;) {
            if (c[k] < s - (i - k)) {
                ++c[k];
                for (std::size_t l = k + 1; l < i; ++l) c[l] = c[l - 1] + 1;
                return true;
            }
        }
        return false;
    };
    bool more_rows = true;
    while (more_rows) {
        for (std::size_t k = 0; k < i; ++k) cols[k] = k;
        bool more_cols = true;
        while (more_cols) {
            std::vector<std::vector<Polynomial>> sub(i, std::vector<Polynomial>(i));
            for (std::size_t r = 0; r < i; ++r)
                for (std::size_t c = 0; c < i; ++c) sub[r][c] = A[rows[r]][cols[c]];
            Polynomial d = poly_det(sub, vars);
            if (!d.is_zero()) {
                // clear w powers and reduce mod J
                Polynomial q;
                if (!H.ctx.w.is_constant())
                    while (try_divide_exact(d, H.ctx.w, q)) d = q;
                if (!H.ctx.Jgb.empty())
                    d = normal_form(d, H.ctx.Jgb, MonomialOrder::grevlex());
                if (!d.is_zero()) {
                    d = d.canonicalized();
                    if (d.is_constant()) return Ideal::one(vars);
                    if (seen.insert(d.str()).second) out.gens.push_back(d);
                }
            }
            more_cols = next_comb(cols);
        }
        more_rows = next_comb(rows);
    }
    // saturate by w: the locus only matters on D(w), and the saturated ideal
    // is the canonical representative there (e.g. <b, c, a d> -> <b, c, d>)
    if (!out.gens.empty() && !H.ctx.w.is_constant()) {
        VarList ext = *vars;
        ext.push_back(fresh_var_name(ext, "zsat_"));
        VarsPtr evars = make_vars(ext);
        Ideal E(evars);
        for (auto& g : out.gens) E.gens.push_back(g.rename_into(evars));
        Polynomial z = Polynomial::variable(evars, evars->size() - 1);
        E.gens.push_back(z * H.ctx.w.rename_into(evars) -
                         Polynomial::constant(evars, Rational(1)));
        Ideal sat = elimination_ideal(E, H.ctx.split);
        Ideal back(vars);
        for (auto& g : sat.gens) back.gens.push_back(g.rename_into(vars));
        if (contains_one(back)) return Ideal::one(vars);
        return back;
    }
    return out;
}

ClearedCharpoly charpoly_cleared(const HermiteForm& H) {
    auto [A, m] = cleared_entries(H);
    ClearedCharpoly r;
    r.m = m;
    r.coeffs = fl_charpoly(A, H.ctx.vars, H.ctx.Jgb);
    return r;
}

std::pair<std::size_t, long> rank_signature_at(const HermiteForm& H,
                                               const std::vector<Rational>& point) {
    const std::size_t s = H.entries.size();
    std::vector<Rational> pt = point;
    pt.resize(H.ctx.vars->size(), Rational(0));
    for (auto& g : H.ctx.J.gens)
        if (!g.is_zero() && sign(g.eval(pt)) != 0)
            throw std::domain_error("rank_signature_at: point not on V(J)");
    Rational wv = H.ctx.w.eval(pt);
    if (sign(wv) == 0) throw std::domain_error("rank_signature_at: w vanishes at point");
    std::vector<std::vector<Rational>> M(s, std::vector<Rational>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            M[i][j] = H.entries[i][j].numerator.eval(pt) /
                      pow_rat(wv, H.entries[i][j].w_exponent);
    // rank via Gaussian elimination
    std::size_t rank = 0;
    {
        auto E = M;
        std::size_t r = 0;
        for (std::size_t c = 0; c < s && r < s; ++c) {
            std::size_t p = s;
            for (std::size_t i = r; i < s; ++i)
                if (sign(E[i][c]) != 0) {
                    p = i;
                    break;
                }
            if (p == s) continue;
            std::swap(E[r], E[p]);
            for (std::size_t i = r + 1; i < s; ++i) {
                if (sign(E[i][c]) == 0) continue;
                Rational f = E[i][c] / E[r][c];
                for (std::size_t j = c; j < s; ++j) E[i][j] -= f * E[r][j];
            }
            ++r;
        }
        rank = r;
    }
    // signature via Descartes on the characteristic polynomial (all roots real)
    std::vector<Rational> c(s + 1, Rational(0));
    {
        // Faddeev-LeVerrier over Q
        std::vector<std::vector<Rational>> Mk(s, std::vector<Rational>(s, Rational(0)));
        c[s] = Rational(1);
        for (std::size_t k = 1; k <= s; ++k) {
            std::vector<std::vector<Rational>> AM(s, std::vector<Rational>(s, Rational(0)));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    Rational sum(0);
                    for (std::size_t l = 0; l < s; ++l) {
                        Rational t = Mk[l][j];
                        if (l == j) t += c[s - k + 1];
                        sum += M[i][l] * t;
                    }
                    AM[i][j] = sum;
                }
            Rational tr(0);
            for (std::size_t i = 0; i < s; ++i) tr += AM[i][i];
            c[s - k] = -tr / Rational((long)k);
            Mk = std::move(AM);
        }
    }
    auto variations = [&](bool negate_odd) {
        long v = 0;
        int last = 0;
        for (std::size_t i = 0; i <= s; ++i) {
            int sg = sign(c[i]);
            if (sg == 0) continue;
            if (negate_odd && (i % 2 == 1)) sg = -sg;
            if (last != 0 && sg != last) ++v;
            last = sg;
        }
        return v;
    };
    long pos = variations(false);
    long neg = variations(true);
    return {rank, pos - neg};
}

}  // namespace gcad
