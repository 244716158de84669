#pragma once

#include <vector>

#include "groebner.hpp"

namespace gcad {

struct PolyFactor {
    Polynomial factor;
    int multiplicity = 1;
    // irreducibility over Q established (univariate proof, linearity, or a
    // degree-2 discriminant witness); false means "did not split further"
    bool proven = true;
};

// Complete factorization over Q of a polynomial using a single variable.
// Content is dropped; factors are canonicalized, ordered by degree then
// canonical form. proven=false marks factors where the effort bound was hit.
std::vector<PolyFactor> factorize_univariate(const Polynomial& p);

// Best-effort multivariate splitting: square-free multiplicity peeling,
// per-variable content extraction, univariate factorization when a single
// variable survives. Product of factors equals squarefree-adjusted p up to a
// rational scale (multiplicities preserved from the input).
std::vector<PolyFactor> factor_split(const Polynomial& p);

struct PrimeComponent {
    Ideal ideal;
    bool certified = false;
};

// Minimal associated primes of V(J), best effort. Components are pairwise
// non-redundant and sorted by canonical key; certified=false marks
// pseudo-prime fallbacks whose primality was not established.
std::vector<PrimeComponent> minimal_primes(const Ideal& J);

}  // namespace gcad
