#include "gcad/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gcad/upoly.hpp"

namespace gcad {

namespace {

// ---------------------------------------------------------------------------
// arithmetic mod a small prime (coefficients in [0, p)), dense representation

using ZpPoly = std::vector<long>;

void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long zp_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    zp_trim(r);
    return r;
}

ZpPoly zp_sub(ZpPoly a, const ZpPoly& b, long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    zp_trim(a);
    return a;
}

// divisor must have invertible leading coefficient
std::pair<ZpPoly, ZpPoly> zp_divrem(ZpPoly a, const ZpPoly& b, long p) {
    long inv = zp_inv(b.back(), p);
    ZpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
        long f = a.back() * inv % p;
        std::size_t k = a.size() - b.size();
        if (f != 0) {
            q[k] = f;
            for (std::size_t i = 0; i < b.size(); ++i)
                a[k + i] = ((a[k + i] - f * b[i]) % p + p) % p;
        }
        a.pop_back();
        zp_trim(a);
        if (a.empty()) break;
    }
    zp_trim(q);
    return {q, a};
}

ZpPoly zp_monic(ZpPoly a, long p) {
    if (a.empty()) return a;
    long inv = zp_inv(a.back(), p);
    for (auto& c : a) c = c * inv % p;
    return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long p) {
    while (!b.empty()) {
        ZpPoly r = zp_divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(a, p);
}

// s*a + t*b = 1 for coprime a, b
void zp_bezout(const ZpPoly& a, const ZpPoly& b, long p, ZpPoly& s, ZpPoly& t) {
    ZpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = zp_divrem(r0, r1, p);
        ZpPoly ns = zp_sub(s0, zp_mul(q, s1, p), p);
        ZpPoly nt = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    long inv = zp_inv(r0.back(), p);
    s = s0;
    t = t0;
    for (auto& c : s) c = c * inv % p;
    for (auto& c : t) c = c * inv % p;
}

ZpPoly zp_derivative(const ZpPoly& a, long p) {
    if (a.size() <= 1) return {};
    ZpPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = (long)(i % (std::size_t)p) * a[i] % p;
    zp_trim(r);
    return r;
}

ZpPoly zp_powmod_x(long e, const ZpPoly& f, long p) {
    // x^e mod f by square and multiply
    ZpPoly r = {1}, base = zp_divrem({0, 1}, f, p).second;
    while (e > 0) {
        if (e & 1) r = zp_divrem(zp_mul(r, base, p), f, p).second;
        base = zp_divrem(zp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return r;
}

// Berlekamp factorization of a squarefree monic f mod p into monic irreducibles
std::vector<ZpPoly> berlekamp(const ZpPoly& f, long p) {
    std::size_t n = f.size() - 1;
    if (n <= 1) return {f};
    // columns of the Frobenius matrix: x^(jp) mod f
    ZpPoly xp = zp_powmod_x(p, f, p);
    std::vector<ZpPoly> cols(n);
    cols[0] = {1};
    for (std::size_t j = 1; j < n; ++j)
        cols[j] = zp_divrem(zp_mul(cols[j - 1], xp, p), f, p).second;
    // M = Frobenius - I, columns indexed by j
    std::vector<std::vector<long>> M(n, std::vector<long>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < cols[j].size(); ++i) M[i][j] = cols[j][i];
        M[j][j] = ((M[j][j] - 1) % p + p) % p;
    }
    // nullspace basis by column reduction
    std::vector<long> pivot_of_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t r = rank;
        std::size_t pr = n;
        for (std::size_t i = 0; i < n; ++i) {
            bool used = false;
            for (std::size_t c2 = 0; c2 < col; ++c2)
                if (pivot_of_col[c2] == (long)i) used = true;
            if (!used && M[i][col] != 0) {
                pr = i;
                break;
            }
        }
        (void)r;
        if (pr == n) continue;
        pivot_of_col[col] = (long)pr;
        ++rank;
        long inv = zp_inv(M[pr][col], p);
        for (std::size_t c2 = 0; c2 < n; ++c2) M[pr][c2] = M[pr][c2] * inv % p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pr || M[i][col] == 0) continue;
            long f2 = M[i][col];
            for (std::size_t c2 = 0; c2 < n; ++c2)
                M[i][c2] = ((M[i][c2] - f2 * M[pr][c2]) % p + p) % p;
        }
    }
    std::size_t nfac = n - rank;
    if (nfac == 1) return {f};
    // nullspace vectors: free columns
    std::vector<ZpPoly> basis;
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] != -1) continue;
        std::vector<long> v(n, 0);
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < n; ++c2) {
            if (pivot_of_col[c2] == -1) continue;
            long val = M[(std::size_t)pivot_of_col[c2]][col];
            v[c2] = (p - val) % p;
        }
        ZpPoly h(v);
        zp_trim(h);
        basis.push_back(h);
    }
    std::vector<ZpPoly> factors = {f};
    for (auto& h : basis) {
        if (factors.size() >= nfac) break;
        if (h.size() <= 1) continue;  // constant vector splits nothing
        std::vector<ZpPoly> next;
        for (auto& u : factors) {
            if (u.size() - 1 <= 1) {
                next.push_back(u);
                continue;
            }
            ZpPoly rem = u;
            for (long s = 0; s < p && rem.size() > 1; ++s) {
                ZpPoly hs = h;
                if (hs.empty()) hs = {0};
                hs[0] = ((hs[0] - s) % p + p) % p;
                zp_trim(hs);
                ZpPoly g = hs.empty() ? ZpPoly{} : zp_gcd(rem, hs, p);
                if (g.size() > 1 && g.size() < rem.size()) {
                    next.push_back(g);
                    rem = zp_divrem(rem, g, p).first;
                }
            }
            if (rem.size() > 1)
                next.push_back(zp_monic(rem, p));
        }
        factors = std::move(next);
    }
    return factors;
}

// ---------------------------------------------------------------------------
// integer polynomials modulo a big modulus m, symmetric representatives

using MPoly = std::vector<Integer>;

Integer sym_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

void m_trim(MPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

MPoly m_reduce(MPoly a, const Integer& m) {
    for (auto& c : a) c = sym_mod(c, m);
    m_trim(a);
    return a;
}

MPoly m_mul(const MPoly& a, const MPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return m_reduce(std::move(r), m);
}

MPoly m_add(MPoly a, const MPoly& b, const Integer& m) {
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return m_reduce(std::move(a), m);
}

MPoly m_sub(MPoly a, const MPoly& b, const Integer& m) {
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return m_reduce(std::move(a), m);
}

// divisor monic
std::pair<MPoly, MPoly> m_divrem(MPoly a, const MPoly& b, const Integer& m) {
    MPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    while (a.size() >= b.size()) {
        Integer f = a.back();
        std::size_t k = a.size() - b.size();
        if (sgn(f) != 0) {
            q[k] = f;
            for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = sym_mod(a[k + i] - f * b[i], m);
        }
        a.pop_back();
        m_trim(a);
        if (a.empty()) break;
    }
    m_trim(q);
    return {m_reduce(std::move(q), m), std::move(a)};
}

MPoly m_from_zp(const ZpPoly& a) {
    MPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(a[i]);
    return r;
}

// one quadratic Hensel step (von zur Gathen & Gerhard, alg. 15.10):
// f = g*h, s*g + t*h = 1 (mod m), h monic -> same mod m^2
void hensel_step(const MPoly& f, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const Integer& m) {
    Integer m2 = m * m;
    MPoly e = m_sub(m_reduce(f, m2), m_mul(g, h, m2), m2);
    auto [q, r] = m_divrem(m_mul(s, e, m2), h, m2);
    g = m_add(g, m_add(m_mul(t, e, m2), m_mul(q, g, m2), m2), m2);
    h = m_add(h, r, m2);
    MPoly b = m_sub(m_add(m_mul(s, g, m2), m_mul(t, h, m2), m2), MPoly{Integer(1)}, m2);
    auto [c, d] = m_divrem(m_mul(s, b, m2), h, m2);
    s = m_sub(s, d, m2);
    t = m_sub(t, m_add(m_mul(t, b, m2), m_mul(c, g, m2), m2), m2);
}

// F monic mod P with F = prod(mods) (mod p); returns the lifted monic factors mod P
std::vector<MPoly> hensel_tree(const MPoly& F, const std::vector<ZpPoly>& mods, long p,
                               const Integer& P) {
    if (mods.size() == 1) return {F};
    std::size_t half = mods.size() / 2;
    ZpPoly g0 = {1}, h0 = {1};
    for (std::size_t i = 0; i < half; ++i) g0 = zp_mul(g0, mods[i], p);
    for (std::size_t i = half; i < mods.size(); ++i) h0 = zp_mul(h0, mods[i], p);
    ZpPoly s0, t0;
    zp_bezout(g0, h0, p, s0, t0);
    MPoly g = m_from_zp(g0), h = m_from_zp(h0), s = m_from_zp(s0), t = m_from_zp(t0);
    Integer m(p);
    while (m < P) {
        hensel_step(F, g, h, s, t, m);
        m = m * m;
    }
    g = m_reduce(g, P);
    h = m_reduce(h, P);
    std::vector<ZpPoly> left(mods.begin(), mods.begin() + (long)half);
    std::vector<ZpPoly> right(mods.begin() + (long)half, mods.end());
    auto a = hensel_tree(g, left, p, P);
    auto b = hensel_tree(h, right, p, P);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// ---------------------------------------------------------------------------
// factoring a squarefree primitive integer polynomial

const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,  43,
                        47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};

bool z_try_divide(const std::vector<Integer>& f, const std::vector<Integer>& g,
                  std::vector<Integer>& quot) {
    UPoly uf = upoly_from_z(f), ug = upoly_from_z(g);
    auto [q, r] = udivrem(uf, ug);
    if (!r.is_zero()) return false;
    for (auto& c : q.c)
        if (!is_integer(c)) return false;
    quot.clear();
    for (auto& c : q.c) quot.push_back(c.get_num());
    return true;
}

std::vector<Integer> z_primitive(std::vector<Integer> f) {
    Integer g(0);
    for (auto& c : f) g = gcd(g, c);
    if (sgn(f.back()) < 0) g = -g;
    if (sgn(g) != 0)
        for (auto& c : f) c /= g;
    return f;
}

// squarefree primitive f over Z, deg >= 1; appends (factor, proven) pairs
void factor_squarefree_z(std::vector<Integer> f, std::vector<std::pair<UPoly, bool>>& out) {
    long n = (long)f.size() - 1;
    if (n <= 1) {
        out.push_back({upoly_from_z(f), true});
        return;
    }
    if (n == 2) {
        Integer a = f[2], b = f[1], c = f[0];
        Integer disc = b * b - 4 * a * c;
        if (sgn(disc) < 0 || !is_perfect_square(disc)) {
            out.push_back({upoly_from_z(f), true});
            return;
        }
        Integer s = sqrt(disc);
        // roots (-b +- s) / (2a)
        for (int e = 0; e < 2; ++e) {
            Integer num = (e == 0) ? Integer(-b + s) : Integer(-b - s);
            Rational root = Rational(num) / Rational(2 * a);
            root.canonicalize();
            UPoly lin({-root.get_num(), Rational(root.get_den())});
            out.push_back({lin, true});
        }
        return;
    }
    if (n > 40) {
        out.push_back({upoly_from_z(f), false});  // effort bound
        return;
    }
    // choose a prime keeping f squarefree
    long p = 0;
    std::vector<ZpPoly> mods;
    for (long cand : kPrimes) {
        if (f.back() % cand == 0) continue;
        ZpPoly fp(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            fp[i] = (long)mpz_fdiv_ui(f[i].get_mpz_t(), (unsigned long)cand);
        zp_trim(fp);
        ZpPoly g = zp_gcd(fp, zp_derivative(fp, cand), cand);
        if (g.size() != 1) continue;
        p = cand;
        mods = berlekamp(zp_monic(fp, cand), cand);
        break;
    }
    if (p == 0) {
        out.push_back({upoly_from_z(f), false});
        return;
    }
    if (mods.size() == 1) {
        out.push_back({upoly_from_z(f), true});
        return;
    }
    if (mods.size() > 12) {
        out.push_back({upoly_from_z(f), false});  // recombination effort bound
        return;
    }
    std::sort(mods.begin(), mods.end());
    // Mignotte-style bound on factor coefficients, times leading coefficient
    Integer norm(0);
    for (auto& c : f) norm += c * c;
    Integer bound = (sqrt(norm) + 1 + abs(f.back())) * abs(f.back());
    Integer two_n(1);
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), (mp_bitcnt_t)(n + 1));
    bound *= two_n;
    Integer P(p);
    while (P <= 2 * bound) P = P * P;
    // monic image of f mod P
    Integer lc = f.back(), lcinv;
    mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t());
    MPoly Fm(f.begin(), f.end());
    for (auto& c : Fm) c = sym_mod(c * lcinv, P);
    auto lifted = hensel_tree(Fm, mods, p, P);

    std::vector<Integer> rem = f;
    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    for (std::size_t k = 1; remaining > 0 && k <= remaining; ++k) {
        // all k-subsets of the unused lifted factors
        std::vector<std::size_t> avail;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) avail.push_back(i);
        if (k > avail.size()) break;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        bool found = true;
        while (found) {
            found = false;
            // candidate from current combination
            Integer rlc = rem.back();
            MPoly cand = {rlc};
            for (std::size_t i = 0; i < k; ++i) cand = m_mul(cand, lifted[avail[idx[i]]], P);
            std::vector<Integer> cz = z_primitive({cand.begin(), cand.end()});
            std::vector<Integer> quot;
            if ((long)cz.size() - 1 >= 1 && z_try_divide(rem, cz, quot)) {
                out.push_back({upoly_from_z(cz), true});
                for (std::size_t i = 0; i < k; ++i) used[avail[idx[i]]] = true;
                remaining -= k;
                rem = z_primitive(std::move(quot));
                k = 0;  // restart subset sizes
                break;
            }
            // next combination
            for (long i = (long)k - 1; i >= 0; --i) {
                if (idx[(std::size_t)i] < avail.size() - (k - (std::size_t)i)) {
                    ++idx[(std::size_t)i];
                    for (std::size_t j = (std::size_t)i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    found = true;
                    break;
                }
            }
        }
    }
    if ((long)rem.size() - 1 >= 1) out.push_back({upoly_from_z(rem), true});
}

// squarefree u over Q, deg >= 1
std::vector<std::pair<UPoly, bool>> ufactor_squarefree(const UPoly& u) {
    std::vector<std::pair<UPoly, bool>> out;
    factor_squarefree_z(upoly_primitive_z(u), out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.c < b.first.c;
    });
    return out;
}

// Yun squarefree decomposition: list of (squarefree part, multiplicity)
std::vector<std::pair<UPoly, int>> yun(const UPoly& f) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly d = f.derivative();
    UPoly a = ugcd(f, d);
    UPoly b = udivrem(f, a).first;
    UPoly c = udivrem(d, a).first;
    int i = 1;
    while (b.degree() > 0) {
        UPoly cmb = c - b.derivative();
        UPoly g = ugcd(b, cmb);
        if (g.degree() > 0) out.push_back({g.monic(), i});
        b = udivrem(b, g).first;
        c = udivrem(cmb, g).first;
        ++i;
    }
    return out;
}

bool poly_sort_less(const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.total_degree() != b.factor.total_degree())
        return a.factor.total_degree() < b.factor.total_degree();
    return a.factor.str() < b.factor.str();
}

}  // namespace

std::vector<PolyFactor> factorize_univariate(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("factorize_univariate: zero polynomial");
    std::vector<PolyFactor> out;
    if (p.is_constant()) return out;
    std::size_t v = p.nvars();
    for (std::size_t u = 0; u < p.nvars(); ++u)
        if (p.uses_var(u)) {
            if (v != p.nvars()) throw std::invalid_argument("factorize_univariate: several vars");
            v = u;
        }
    UPoly f = to_upoly(p, v);
    for (auto& [s, mult] : yun(f)) {
        for (auto& [g, proven] : ufactor_squarefree(s)) {
            PolyFactor pf;
            pf.factor = from_upoly(g, p.vars, v).canonicalized();
            pf.multiplicity = mult;
            pf.proven = proven;
            out.push_back(pf);
        }
    }
    std::sort(out.begin(), out.end(), poly_sort_less);
    return out;
}

namespace {

// squarefree non-constant q; appends irreducible-or-stuck factors with mult
void split_squarefree(const Polynomial& q, int mult, std::vector<PolyFactor>& out) {
    if (q.is_constant()) return;
    std::vector<std::size_t> used;
    for (std::size_t v = 0; v < q.nvars(); ++v)
        if (q.uses_var(v)) used.push_back(v);
    if (used.size() == 1) {
        for (auto& pf : factorize_univariate(q))
            out.push_back({pf.factor, mult * pf.multiplicity, pf.proven});
        return;
    }
    for (std::size_t v : used) {
        Polynomial cont = content_in(q, v);
        if (!cont.is_constant()) {
            split_squarefree(cont.canonicalized(), mult, out);
            split_squarefree(divide_exact(q, cont).canonicalized(), mult, out);
            return;
        }
    }
    // primitive in every variable; try a degree-2 discriminant split
    for (std::size_t v : used) {
        if (q.degree_in(v) == 1) {
            out.push_back({q.canonicalized(), mult, true});
            return;
        }
    }
    for (std::size_t v : used) {
        if (q.degree_in(v) != 2) continue;
        auto cs = q.coeffs_in(v);  // [C, B, A]
        Polynomial disc = cs[1] * cs[1] - cs[2] * cs[0] * Rational(4);
        if (!poly_is_square(disc)) {
            out.push_back({q.canonicalized(), mult, true});
            return;
        }
        // disc = S^2: q = (2Av + B - S)(2Av + B + S) / (4A).
        // gcd with the partials recovers S up to a rational scale; fix the
        // scale from the constant disc / S_g^2, a square of a rational.
        Polynomial S = disc;
        for (std::size_t u = 0; u < q.nvars(); ++u)
            if (disc.uses_var(u)) S = poly_gcd(S, disc.derivative(u));
        Polynomial ratio = divide_exact(disc, S * S);
        Rational c2 = ratio.constant_value();
        if (is_perfect_square(c2.get_num()) && is_perfect_square(c2.get_den())) {
            S = S * Rational(sqrt(c2.get_num()), sqrt(c2.get_den()));
            Polynomial vpoly = Polynomial::variable(q.vars, v);
            Polynomial f1 = cs[2] * vpoly * Rational(2) + cs[1] - S;
            Polynomial f2 = cs[2] * vpoly * Rational(2) + cs[1] + S;
            // strip the 4A spread across the factors' contents in v
            f1 = divide_exact(f1, content_in(f1, v)).canonicalized();
            f2 = divide_exact(f2, content_in(f2, v)).canonicalized();
            if ((f1 * f2).canonicalized() == q.canonicalized()) {
                split_squarefree(f1.canonicalized(), mult, out);
                split_squarefree(f2.canonicalized(), mult, out);
                return;
            }
        }
        out.push_back({q.canonicalized(), mult, false});
        return;
    }
    if (q.total_degree() == 1) {
        out.push_back({q.canonicalized(), mult, true});
        return;
    }
    out.push_back({q.canonicalized(), mult, false});
}

}  // namespace

std::vector<PolyFactor> factor_split(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_split: zero polynomial");
    std::vector<PolyFactor> out;
    if (p.is_constant()) return out;
    // multiplicity peeling via iterated squarefree parts:
    // s_j = squarefree_part of p / (s_1 ... s_{j-1}); factors of multiplicity
    // exactly j are s_j / s_{j+1}
    std::vector<Polynomial> s;
    Polynomial cur = p;
    while (!cur.is_constant()) {
        Polynomial sj = squarefree_part(cur).canonicalized();
        s.push_back(sj);
        cur = divide_exact(cur, sj);
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
        Polynomial qj = (j + 1 < s.size()) ? divide_exact(s[j], s[j + 1]).canonicalized() : s[j];
        if (!qj.is_constant()) split_squarefree(qj, (int)j + 1, out);
    }
    std::sort(out.begin(), out.end(), poly_sort_less);
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// minimal primes

struct QuotientBasis {
    std::vector<Monomial> mons;
    std::map<Monomial, std::size_t> index;
};

bool zero_dimensional(const std::vector<Polynomial>& gb, std::size_t nvars,
                      const MonomialOrder& T, QuotientBasis& out) {
    Staircase st = staircase(gb, {}, 0, T);
    if (!st.finite) return false;
    out.mons = st.monomials;
    out.index.clear();
    for (std::size_t i = 0; i < out.mons.size(); ++i) out.index[out.mons[i]] = i;
    (void)nvars;
    return true;
}

std::vector<Rational> nf_vector(const Polynomial& f, const std::vector<Polynomial>& gb,
                                const MonomialOrder& T, const QuotientBasis& B) {
    Polynomial r = normal_form(f, gb, T);
    std::vector<Rational> v(B.mons.size(), Rational(0));
    for (auto& [m, c] : r.terms) v[B.index.at(m)] = c;
    return v;
}

// minimal polynomial of t in the quotient ring
UPoly minpoly_of(const Polynomial& t, const std::vector<Polynomial>& gb, const MonomialOrder& T,
                 const QuotientBasis& B) {
    std::size_t D = B.mons.size();
    // echelon rows with their expression in terms of powers of t
    std::vector<std::vector<Rational>> rows;       // reduced vectors
    std::vector<std::size_t> pivots;               // pivot column per row
    std::vector<std::vector<Rational>> combos;     // power-basis coordinates
    Polynomial tpow = Polynomial::constant(t.vars, Rational(1));
    for (std::size_t k = 0; k <= D; ++k) {
        std::vector<Rational> v = nf_vector(tpow, gb, T, B);
        std::vector<Rational> combo(k + 1, Rational(0));
        combo[k] = Rational(1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (sign(v[pivots[r]]) == 0) continue;
            Rational f = v[pivots[r]];
            for (std::size_t c = 0; c < D; ++c) v[c] -= f * rows[r][c];
            for (std::size_t c = 0; c < combos[r].size(); ++c) combo[c] -= f * combos[r][c];
        }
        std::size_t piv = D;
        for (std::size_t c = 0; c < D; ++c)
            if (sign(v[c]) != 0) {
                piv = c;
                break;
            }
        if (piv == D) return UPoly(std::move(combo)).monic();
        Rational inv = Rational(1) / v[piv];
        for (auto& c : v) c *= inv;
        for (auto& c : combo) c *= inv;
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        combos.push_back(std::move(combo));
        tpow = normal_form(tpow * t, gb, T);
    }
    throw std::logic_error("minpoly_of: no relation found");
}

Polynomial compose_upoly(const UPoly& u, const Polynomial& t) {
    Polynomial r = Polynomial::zero(t.vars);
    for (auto it = u.c.rbegin(); it != u.c.rend(); ++it)
        r = r * t + Polynomial::constant(t.vars, *it);
    return r;
}

struct Worker {
    std::map<std::string, PrimeComponent> found;

    void emit(const Ideal& I, bool certified) {
        std::string key = ideal_key(I);
        auto it = found.find(key);
        if (it == found.end()) {
            Ideal canon(I.vars, reduced_groebner(I, MonomialOrder::grevlex()));
            found.emplace(key, PrimeComponent{canon, certified});
        } else {
            it->second.certified = it->second.certified && certified;
        }
    }

    void process(const Ideal& I, int depth) {
        MonomialOrder T = MonomialOrder::grevlex();
        const auto& gb = reduced_groebner(I, T);
        if (gb.empty()) {
            emit(I, true);  // zero ideal: the ring is a domain
            return;
        }
        if (gb.size() == 1 && gb[0].is_constant()) return;
        if (depth > 48) {
            emit(I, false);
            return;
        }
        // replace generators by squarefree parts (same variety)
        {
            std::vector<Polynomial> gens2;
            bool changed = false;
            for (auto& g : gb) {
                Polynomial s = squarefree_part(g).canonicalized();
                changed = changed || !(s == g);
                gens2.push_back(s);
            }
            if (changed) {
                process(Ideal(I.vars, gens2), depth + 1);
                return;
            }
        }
        // branch on any generator that splits
        std::vector<std::vector<PolyFactor>> splits(gb.size());
        for (std::size_t i = 0; i < gb.size(); ++i) {
            splits[i] = factor_split(gb[i]);
            if (splits[i].size() >= 2) {
                for (auto& pf : splits[i]) {
                    std::vector<Polynomial> gens2;
                    for (std::size_t j = 0; j < gb.size(); ++j)
                        if (j != i) gens2.push_back(gb[j]);
                    gens2.push_back(pf.factor);
                    process(Ideal(I.vars, gens2), depth + 1);
                }
                return;
            }
        }
        // no generator splits
        QuotientBasis B;
        if (zero_dimensional(gb, I.vars->size(), T, B)) {
            // radicalize / split through per-variable eliminants
            for (std::size_t v = 0; v < I.vars->size(); ++v) {
                UPoly mv = minpoly_of(Polynomial::variable(I.vars, v), gb, T, B);
                UPoly sf = usquarefree(mv);
                if (sf.degree() < mv.degree()) {
                    std::vector<Polynomial> gens2(gb.begin(), gb.end());
                    gens2.push_back(from_upoly(sf, I.vars, v).canonicalized());
                    process(Ideal(I.vars, gens2), depth + 1);
                    return;
                }
                auto fs = ufactor_squarefree(sf);
                if (fs.size() >= 2) {
                    for (auto& [g, proven] : fs) {
                        std::vector<Polynomial> gens2(gb.begin(), gb.end());
                        gens2.push_back(from_upoly(g, I.vars, v).canonicalized());
                        process(Ideal(I.vars, gens2), depth + 1);
                        (void)proven;
                    }
                    return;
                }
            }
            // the ideal is radical; test primality with linear separating forms
            std::size_t D = B.mons.size();
            for (int attempt = 1; attempt <= 4; ++attempt) {
                Polynomial t = Polynomial::zero(I.vars);
                long c = 1;
                for (std::size_t v = 0; v < I.vars->size(); ++v) {
                    t = t + Polynomial::variable(I.vars, v) * Rational(c);
                    c = c * (attempt + 1) + 1;
                }
                UPoly mt = minpoly_of(t, gb, T, B);
                if ((std::size_t)mt.degree() != D) continue;
                auto fs = ufactor_squarefree(mt);
                if (fs.size() >= 2) {
                    for (auto& [g, proven] : fs) {
                        std::vector<Polynomial> gens2(gb.begin(), gb.end());
                        gens2.push_back(compose_upoly(g, t).canonicalized());
                        process(Ideal(I.vars, gens2), depth + 1);
                        (void)proven;
                    }
                    return;
                }
                emit(I, fs[0].second);
                return;
            }
            emit(I, false);  // no separating form found
            return;
        }
        // positive-dimensional terminal cases
        if (gb.size() == 1) {
            emit(I, splits[0].size() == 1 && splits[0][0].proven);
            return;
        }
        bool all_linear = true;
        for (auto& g : gb)
            if (g.total_degree() > 1) all_linear = false;
        emit(I, all_linear);
    }
};

}  // namespace

std::vector<PrimeComponent> minimal_primes(const Ideal& J) {
    if (J.trivially_zero()) return {{Ideal(J.vars), true}};
    Worker w;
    w.process(J, 0);
    std::vector<PrimeComponent> comps;
    for (auto& [k, c] : w.found) comps.push_back(c);
    // remove components whose variety is contained in another's
    auto contains = [](const PrimeComponent& p, const PrimeComponent& q) {
        // V(q) subset of V(p): every generator of p vanishes on V(q)
        for (auto& g : p.ideal.gens)
            if (!radical_membership(g, q.ideal)) return false;
        return true;
    };
    std::vector<bool> drop(comps.size(), false);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (i == j || drop[i] || drop[j]) continue;
            if (contains(comps[i], comps[j])) {
                // V(j) inside V(i); drop j unless equal varieties with i>j
                if (contains(comps[j], comps[i]) && i > j)
                    drop[i] = true;
                else
                    drop[j] = true;
            }
        }
    }
    std::vector<PrimeComponent> out;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!drop[i]) out.push_back(comps[i]);
    return out;
}

}  // namespace gcad
