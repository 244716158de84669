#include "gcad/realalg.hpp"

#include <algorithm>

#include "gcad/decompose.hpp"

namespace gcad {

namespace {

std::size_t g_refine_limit = 100000;

}  // namespace

void set_refine_limit(std::size_t n) { g_refine_limit = n ? n : 100000; }
std::size_t refine_limit() { return g_refine_limit; }

// ---------------------------------------------------------------- Sturm

namespace {

// positive-scalar normalization: primitive integer coefficients with the
// original sign kept, so sign variations are unchanged but the rational
// remainder cascade cannot swell
UPoly positive_primitive(const UPoly& u) {
    if (u.is_zero()) return u;
    UPoly r = upoly_from_z(upoly_primitive_z(u));
    return sign(u.lc()) < 0 ? -r : r;
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> s;
    s.push_back(positive_primitive(p));
    UPoly d = positive_primitive(p.derivative());
    if (!d.is_zero()) {
        s.push_back(d);
        while (true) {
            UPoly r = udivrem(s[s.size() - 2], s.back()).second;
            if (r.is_zero()) break;
            s.push_back(positive_primitive(-r));
        }
    }
    return s;
}

std::size_t variations_at(const std::vector<UPoly>& chain, const Rational& x) {
    std::size_t v = 0;
    int last = 0;
    for (auto& q : chain) {
        int s = sign(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

std::size_t variations_at_inf(const std::vector<UPoly>& chain, int dir) {
    std::size_t v = 0;
    int last = 0;
    for (auto& q : chain) {
        if (q.is_zero()) continue;
        int s = sign(q.lc());
        if (dir < 0 && q.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

std::size_t chain_count(const std::vector<UPoly>& chain, const Rational& a,
                        const Rational& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

}  // namespace

std::size_t sturm_count(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    auto chain = sturm_chain(p);
    return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

std::size_t sturm_count(const UPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    if (!(a < b)) return 0;
    if (sign(p.eval(a)) == 0 || sign(p.eval(b)) == 0)
        throw std::invalid_argument("sturm_count: endpoint is a root");
    return chain_count(sturm_chain(p), a, b);
}

// ------------------------------------------------- RealAlgebraicNumber

struct RealAlgebraicNumber::Rep {
    UPoly d;
    Rational lo, hi;
    bool rat = false;
    Rational val;
};

RealAlgebraicNumber::RealAlgebraicNumber() : rep(std::make_shared<Rep>()) {
    rep->rat = true;
    rep->d = UPoly({Rational(0), Rational(1)});
}

RealAlgebraicNumber RealAlgebraicNumber::from_rational(const Rational& v) {
    RealAlgebraicNumber r;
    r.rep->val = v;
    r.rep->lo = r.rep->hi = v;
    r.rep->d = UPoly({-v, Rational(1)});
    return r;
}

RealAlgebraicNumber::RealAlgebraicNumber(UPoly defining, Rational lo, Rational hi) {
    if (defining.degree() < 1)
        throw std::invalid_argument("RealAlgebraicNumber: constant defining polynomial");
    if (!(lo < hi)) throw std::invalid_argument("RealAlgebraicNumber: empty interval");
    int sl = sign(defining.eval(lo)), sh = sign(defining.eval(hi));
    if (sl == 0 || sh == 0 || sl == sh)
        throw std::invalid_argument("RealAlgebraicNumber: no sign change over the interval");
    if (sturm_count(defining, lo, hi) != 1)
        throw std::invalid_argument("RealAlgebraicNumber: interval does not isolate one root");
    rep = std::make_shared<Rep>();
    rep->d = std::move(defining);
    rep->lo = std::move(lo);
    rep->hi = std::move(hi);
}

bool RealAlgebraicNumber::is_rational() const { return rep->rat; }

Rational RealAlgebraicNumber::rational_value() const {
    if (!rep->rat) throw std::logic_error("rational_value on an irrational number");
    return rep->val;
}

const UPoly& RealAlgebraicNumber::defining() const { return rep->d; }
Rational RealAlgebraicNumber::lo() const { return rep->lo; }
Rational RealAlgebraicNumber::hi() const { return rep->hi; }

void RealAlgebraicNumber::refine() const {
    Rep& r = *rep;
    if (r.rat) return;
    Rational m = (r.lo + r.hi) / 2;
    int sm = sign(r.d.eval(m));
    if (sm == 0) {
        r.rat = true;
        r.val = m;
        r.lo = r.hi = m;
        return;
    }
    if (sm == sign(r.d.eval(r.lo)))
        r.lo = m;
    else
        r.hi = m;
}

void RealAlgebraicNumber::refine_below(const Rational& width) const {
    for (std::size_t step = 0; hi() - lo() >= width && !is_rational(); ++step) {
        if (step > g_refine_limit) throw BudgetError("refine_below: budget exhausted");
        refine();
    }
}

Rational RealAlgebraicNumber::mid() const {
    return rep->rat ? rep->val : (rep->lo + rep->hi) / 2;
}

double RealAlgebraicNumber::to_double() const {
    refine_below(Rational(Integer(1), Integer(1) << 48));
    return mid().get_d();
}

std::string RealAlgebraicNumber::str() const {
    if (rep->rat) return to_string(rep->val);
    static const VarsPtr xctx = make_vars({"x"});
    return "root of " + from_upoly(rep->d, xctx, 0).str() + " in (" + to_string(rep->lo) +
           ", " + to_string(rep->hi) + ")";
}

// ------------------------------------------------------- sign and order

int sign_at(const UPoly& q, const RealAlgebraicNumber& alpha) {
    if (q.is_zero()) return 0;
    if (alpha.is_rational()) return sign(q.eval(alpha.rational_value()));
    UPoly g = ugcd(q, alpha.defining());
    // roots of g lie among the defining polynomial's roots, so a root of g in
    // the isolating interval is alpha itself
    if (g.degree() >= 1 && sturm_count(g, alpha.lo(), alpha.hi()) >= 1) return 0;
    auto chain = sturm_chain(q);
    for (std::size_t step = 0;; ++step) {
        if (step > g_refine_limit) throw BudgetError("sign_at: budget exhausted");
        if (alpha.is_rational()) return sign(q.eval(alpha.rational_value()));
        Rational lo = alpha.lo(), hi = alpha.hi();
        if (sign(q.eval(lo)) != 0 && sign(q.eval(hi)) != 0 && chain_count(chain, lo, hi) == 0)
            return sign(q.eval(hi));
        alpha.refine();
    }
}

namespace {

bool root_inside(const UPoly& g, const RealAlgebraicNumber& x) {
    if (x.is_rational()) return sign(g.eval(x.rational_value())) == 0;
    return sturm_count(g, x.lo(), x.hi()) >= 1;
}

}  // namespace

int compare(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
    UPoly g = ugcd(a.defining(), b.defining());
    for (std::size_t step = 0;; ++step) {
        if (step > g_refine_limit) throw BudgetError("compare: budget exhausted");
        if (a.is_rational() && b.is_rational()) {
            Rational x = a.rational_value(), y = b.rational_value();
            return x < y ? -1 : (x == y ? 0 : 1);
        }
        // nonrational values lie strictly inside their open intervals
        if (a.hi() <= b.lo()) return -1;
        if (b.hi() <= a.lo()) return 1;
        if (g.degree() >= 1 && root_inside(g, a) && root_inside(g, b)) {
            Rational L = std::min(a.lo(), b.lo()), H = std::max(a.hi(), b.hi());
            if (sign(g.eval(L)) != 0 && sign(g.eval(H)) != 0 && sturm_count(g, L, H) == 1)
                return 0;
        }
        a.refine();
        b.refine();
    }
}

// -------------------------------------------------------- root isolation

namespace {

// in-place Taylor shift a(x) <- a(x+1)
void taylor_shift1(std::vector<Integer>& a) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t j = 0; j + 1 < n; ++j)
        for (std::size_t i = n - 1; i-- > j;) a[i] += a[i + 1];
}

int coeff_variations(const std::vector<Integer>& a) {
    int v = 0, last = 0;
    for (auto& c : a) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Descartes/VCA bisection: roots of a in (0,1) scaled to the real range
// (lo, hi); emitted events are isolating intervals, or lo==hi for an exact
// rational root hit at a bisection midpoint. Requires a(0) != 0, a(1) != 0.
void vca01(std::vector<Integer> a, const Rational& lo, const Rational& hi,
           std::vector<std::pair<Rational, Rational>>& out, int depth) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
    if (a.size() <= 1) return;
    std::vector<Integer> b(a.rbegin(), a.rend());
    taylor_shift1(b);  // (x+1)^n a(1/(x+1))
    int v = coeff_variations(b);
    if (v == 0) return;
    if (v == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    if (depth > 4000) throw BudgetError("isolate_roots: excessive bisection depth");
    const std::size_t n = a.size();
    std::vector<Integer> left(n);  // 2^(n-1) a(x/2)
    for (std::size_t i = 0; i < n; ++i)
        mpz_mul_2exp(left[i].get_mpz_t(), a[i].get_mpz_t(), (mp_bitcnt_t)(n - 1 - i));
    std::vector<Integer> right = left;  // 2^(n-1) a((x+1)/2)
    taylor_shift1(right);
    Rational midv = (lo + hi) / 2;
    bool exact = sgn(right[0]) == 0;
    if (exact) right.erase(right.begin());  // square-free: the root is simple
    vca01(left, lo, midv, out, depth + 1);
    if (exact) out.emplace_back(midv, midv);
    vca01(right, midv, hi, out, depth + 1);
}

std::vector<Integer> scale_arg(const std::vector<Integer>& a, const Integer& B) {
    std::vector<Integer> r(a.size());
    Integer p(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * p;
        p *= B;
    }
    return r;
}

// roots of one square-free factor, ascending
std::vector<RealAlgebraicNumber> isolate_factor(const UPoly& f) {
    if (f.degree() == 1)
        return {RealAlgebraicNumber::from_rational(-f.coeff(0) / f.coeff(1))};
    std::vector<Integer> a = upoly_primitive_z(f);
    bool zero_root = sgn(a[0]) == 0;
    if (zero_root) a.erase(a.begin());
    Rational m(0);
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        m = std::max(m, Rational(Rational(abs(a[i])) / Rational(abs(a.back()))));
    Integer B(1);
    while (Rational(B) < Rational(1) + m) B <<= 1;  // Cauchy bound, power of two
    std::vector<std::pair<Rational, Rational>> pos, neg, ev;
    vca01(scale_arg(a, B), Rational(0), Rational(B), pos, 0);
    std::vector<Integer> an = a;
    for (std::size_t i = 1; i < an.size(); i += 2) an[i] = -an[i];
    vca01(scale_arg(an, B), Rational(0), Rational(B), neg, 0);
    for (auto it = neg.rbegin(); it != neg.rend(); ++it)
        ev.emplace_back(-it->second, -it->first);
    if (zero_root) ev.emplace_back(Rational(0), Rational(0));
    for (auto& e : pos) ev.push_back(e);
    std::vector<RealAlgebraicNumber> out;
    for (auto& [l, h] : ev)
        out.push_back(l == h ? RealAlgebraicNumber::from_rational(l)
                             : RealAlgebraicNumber(f, l, h));
    return out;
}

}  // namespace

std::vector<RealAlgebraicNumber> isolate_roots(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    UPoly sf = usquarefree(p);
    if (sf.degree() < 1) return {};
    static const VarsPtr xctx = make_vars({"x"});
    auto factors = factorize_univariate(from_upoly(sf, xctx, 0));
    std::vector<RealAlgebraicNumber> roots;
    for (auto& fac : factors)
        for (auto& r : isolate_factor(to_upoly(fac.factor, 0))) roots.push_back(r);
    std::sort(roots.begin(), roots.end(),
              [](const RealAlgebraicNumber& x, const RealAlgebraicNumber& y) {
                  return compare(x, y) < 0;
              });
    return roots;
}

std::vector<RealAlgebraicNumber> isolate_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    for (std::size_t v = 0; v < p.nvars(); ++v)
        if (p.uses_var(v)) return isolate_roots(to_upoly(p, v));
    return {};  // nonzero constant
}

// ------------------------------------------------- signs at sample points

namespace {

struct IV {
    Rational lo, hi;
};

IV iv_add(const IV& a, const IV& b) { return {a.lo + b.lo, a.hi + b.hi}; }

IV iv_mul(const IV& a, const IV& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rational lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return {lo, hi};
}

IV iv_pow(const IV& a, unsigned k) {
    if (k == 0) return {Rational(1), Rational(1)};
    Rational pl = pow_rat(a.lo, k), ph = pow_rat(a.hi, k);
    if (k % 2 == 1) return {pl, ph};
    if (sign(a.lo) >= 0) return {pl, ph};
    if (sign(a.hi) <= 0) return {ph, pl};
    return {Rational(0), std::max(pl, ph)};
}

IV iv_eval(const Polynomial& f, const std::vector<IV>& box,
           const std::vector<std::size_t>& alg) {
    IV acc{Rational(0), Rational(0)};
    for (auto& [mono, c] : f.terms) {
        IV t{c, c};
        for (std::size_t v : alg)
            if (mono.e[v] > 0) t = iv_mul(t, iv_pow(box[v], mono.e[v]));
        acc = iv_add(acc, t);
    }
    return acc;
}

std::string fresh_name(const VarList& vars, const std::string& base) {
    std::string n = base;
    int k = 0;
    auto used = [&](const std::string& s) {
        for (auto& v : vars)
            if (v == s) return true;
        return false;
    };
    while (used(n)) n = base + std::to_string(++k);
    return n;
}

}  // namespace

int sign_at_point(const Polynomial& q, const std::vector<RealAlgebraicNumber>& point) {
    const std::size_t n = q.nvars();
    for (std::size_t v = point.size(); v < n; ++v)
        if (q.uses_var(v))
            throw std::invalid_argument("sign_at_point: variable without a coordinate");
    Polynomial f = q;
    std::vector<std::size_t> alg;
    for (std::size_t v = 0; v < point.size() && v < n; ++v) {
        if (!f.uses_var(v)) continue;
        if (point[v].is_rational())
            f = f.subst(v, point[v].rational_value());
        else
            alg.push_back(v);
    }
    if (alg.empty()) return sign(f.constant_value());

    // the value q(point) is a root of the iterated resultant of t - q
    VarList ext = *q.vars;
    ext.push_back(fresh_name(ext, "t_"));
    VarsPtr evars = make_vars(ext);
    std::size_t t = evars->size() - 1;
    Polynomial P = Polynomial::variable(evars, t) - f.rename_into(evars);
    for (std::size_t v : alg) {
        if (P.degree_in(v) == 0) continue;
        P = resultant(from_upoly(point[v].defining(), evars, v), P, v);
        if (P.is_zero()) throw std::logic_error("sign_at_point: degenerate resultant tower");
    }
    UPoly R = usquarefree(to_upoly(P, t));

    // separation radius around 0 when 0 is a root of R: nonzero roots of the
    // deflation R/x have magnitude above the reciprocal Cauchy bound
    bool zero_root = sign(R.coeff(0)) == 0;
    bool only_zero = false;
    Rational rho(0);
    if (zero_root) {
        UPoly Q(std::vector<Rational>(R.c.begin() + 1, R.c.end()));
        if (Q.degree() < 1) {
            only_zero = true;
        } else {
            Rational m(0);
            for (std::size_t i = 1; i < Q.c.size(); ++i)
                m = std::max(m, abs_val(Q.c[i] / Q.c[0]));
            rho = Rational(1) / (Rational(1) + m);
        }
    }

    std::vector<IV> box(n);
    for (std::size_t step = 0;; ++step) {
        if (step > g_refine_limit) throw BudgetError("sign_at_point: budget exhausted");
        for (std::size_t v : alg) box[v] = {point[v].lo(), point[v].hi()};
        IV e = iv_eval(f, box, alg);
        if (sign(e.lo) > 0) return 1;
        if (sign(e.hi) < 0) return -1;
        if (zero_root && (only_zero || (e.lo >= -rho && e.hi <= rho))) return 0;
        for (std::size_t v : alg) point[v].refine();
    }
}

SampleRoots roots_at_sample(const Polynomial& p,
                            const std::vector<RealAlgebraicNumber>& sample) {
    const std::size_t n = p.nvars();
    if (sample.size() + 1 != n)
        throw std::invalid_argument("roots_at_sample: sample must cover all but one variable");
    const std::size_t x = n - 1;
    SampleRoots out;
    Polynomial f = p;
    std::vector<std::size_t> alg;
    for (std::size_t v = 0; v < x; ++v) {
        if (!f.uses_var(v)) continue;
        if (sample[v].is_rational())
            f = f.subst(v, sample[v].rational_value());
        else
            alg.push_back(v);
    }
    if (alg.empty()) {
        UPoly u = to_upoly(f, x);
        if (u.is_zero()) {
            out.identically_zero = true;
            return out;
        }
        if (u.degree() >= 1) out.roots = isolate_roots(u);
        return out;
    }

    bool allzero = true;
    for (auto& c : f.coeffs_in(x))
        if (!c.is_zero() && sign_at_point(c, sample) != 0) {
            allzero = false;
            break;
        }
    if (allzero) {
        out.identically_zero = true;
        return out;
    }

    Polynomial P = f;
    for (std::size_t v : alg) {
        if (P.degree_in(v) == 0) continue;
        P = resultant(from_upoly(sample[v].defining(), p.vars, v), P, v);
        if (P.is_zero()) throw std::logic_error("roots_at_sample: degenerate resultant tower");
    }
    UPoly R = to_upoly(P, x);
    if (R.degree() < 1) return out;

    for (auto& r : isolate_roots(R)) {
        bool member;
        if (r.is_rational()) {
            member = sign_at_point(f.subst(x, r.rational_value()), sample) == 0;
        } else {
            // a sign change of the specialization across the isolating
            // interval pins the root to this candidate
            int sl = sign_at_point(f.subst(x, r.lo()), sample);
            int sh = sign_at_point(f.subst(x, r.hi()), sample);
            if (sl != 0 && sh != 0 && sl != sh) {
                member = true;
            } else {
                std::vector<RealAlgebraicNumber> extpt = sample;
                extpt.push_back(r);
                member = sign_at_point(f, extpt) == 0;
            }
        }
        if (member) out.roots.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------ Partition1D

std::vector<Level1Cell> partition1d(const std::vector<Polynomial>& polys) {
    UPoly prod = UPoly::constant(Rational(1));
    for (auto& p : polys) {
        if (p.is_zero() || p.is_constant()) continue;
        std::size_t v = 0;
        while (!p.uses_var(v)) ++v;
        prod = prod * usquarefree(to_upoly(p, v));
    }
    std::vector<RealAlgebraicNumber> roots;
    if (prod.degree() >= 1) roots = isolate_roots(prod);

    std::vector<Level1Cell> cells;
    if (roots.empty()) {
        cells.push_back({false, {}, Rational(0)});
        return cells;
    }
    cells.push_back({false, {}, roots.front().lo() - 1});
    for (std::size_t i = 0; i < roots.size(); ++i) {
        cells.push_back({true, roots[i], roots[i].mid()});
        if (i + 1 < roots.size()) {
            for (std::size_t step = 0; !(roots[i].hi() < roots[i + 1].lo()); ++step) {
                if (step > g_refine_limit) throw BudgetError("partition1d: budget exhausted");
                roots[i].refine();
                roots[i + 1].refine();
            }
            cells.push_back({false, {}, (roots[i].hi() + roots[i + 1].lo()) / 2});
        }
    }
    cells.push_back({false, {}, roots.back().hi() + 1});
    return cells;
}

}  // namespace gcad
