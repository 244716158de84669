#pragma once

#include <vector>

#include "groebner.hpp"

namespace gcad {

// number of points of a geometric fiber; infinite marks positive dimension
struct FiberCount {
    bool infinite = false;
    std::size_t count = 0;

    friend bool operator==(const FiberCount&, const FiberCount&) = default;
};

// the fiber cardinality is `count` on V(a) \ V(b); ideals live in the
// y-only context (the first `split` variables)
struct Region {
    Ideal a;
    Ideal b;
    FiberCount count;
    bool certified = true;
};

// Fiber classification of the projection V(I) cap D(h) -> k^split.
// I in k[y,x], J = I cap k[y] expected prime (pseudo-prime branches are
// marked uncertified), h in k[y,x]. Throws std::logic_error if the
// recursion revisits a state (Noetherian invariant violation).
std::vector<Region> fiber_classification(const Ideal& I, const Ideal& J, const Polynomial& h,
                                         std::size_t split);

// Independent verifier: number of points of V(system) cap D(h) for a fully
// specialized system (all context variables are x variables).
FiberCount fiber_count_oracle(const std::vector<Polynomial>& system, const Polynomial& h);

}  // namespace gcad
