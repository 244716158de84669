#pragma once

#include <vector>

#include "groebner.hpp"

namespace gcad {

// value = numerator / w^w_exponent, stored in lowest w-power
struct LocalizedElement {
    Polynomial numerator;
    unsigned w_exponent = 0;
};

// Everything needed to work in the free module (k[y,x]/I)_w over (k[y]/J)_w:
// the block-order GB, the finite staircase basis, and the localization witness.
struct HermiteContext {
    VarsPtr vars;
    std::size_t split = 0;  // x variables are [split, n)
    std::vector<Polynomial> G;
    Ideal J;
    std::vector<Polynomial> Jgb;  // grevlex GB of J
    std::vector<Monomial> basis;
    std::vector<Polynomial> w_factors;
    Polynomial w;  // product of the factors (1 for the empty list)
};

// Builds the context from I, J (J = I cap k[y] expected); throws
// std::domain_error when the staircase is infinite.
HermiteContext make_hermite_context(const Ideal& I, const Ideal& J, std::size_t split);

struct HermiteForm {
    HermiteContext ctx;
    Polynomial h;
    std::vector<std::vector<LocalizedElement>> entries;  // symmetric
};

// trace of g -> f*g on the free module with basis ctx.basis
LocalizedElement trace_of_multiplication(const Polynomial& f, const HermiteContext& ctx);

// (H_h)_ij = tr L_{B_i B_j h}
HermiteForm hermite_matrix(const HermiteContext& ctx, const Polynomial& h);

// ideal of all i-minors, numerators cleared of w-powers and reduced mod J;
// i = 0 gives <1>, i = dim+1 gives <0>
Ideal minors_ideal(const HermiteForm& H, std::size_t i);

struct ClearedCharpoly {
    // characteristic polynomial of w^m * H: coeffs[i] is the lambda^i
    // coefficient, equal to w^{m(s-i)} c_i for the charpoly coefficients c_i
    // of H itself
    std::vector<Polynomial> coeffs;
    unsigned m = 0;
};

ClearedCharpoly charpoly_cleared(const HermiteForm& H);

// exact rank and signature of H specialized at a rational point of
// V(J) cap D(w); throws std::domain_error off that locus
std::pair<std::size_t, long> rank_signature_at(const HermiteForm& H,
                                               const std::vector<Rational>& point);

}  // namespace gcad
