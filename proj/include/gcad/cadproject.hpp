#pragma once

#include <string>
#include <vector>

#include "groebner.hpp"

namespace gcad {

// V(I) cap D(h); h = 1 encodes a closed set
struct BasicConstructibleSet {
    Ideal I;
    Polynomial h;
    bool certified = true;

    // reduced grevlex GB of I plus NF(h): key equality implies set equality
    // as schemes
    std::string canonical_key() const;
};

// Projection of relative dimension 1: the input sets live in k[y_1..y_n, x]
// with x the last variable; outputs live in the y-only context.

// Stratifies V(J) by the characteristic polynomial of the Hermite form of
// V(I) cap D(h): V(I) cap D(h) is geometrically delineable over connected
// components of each output set, and the outputs cover V(J). J is passed in
// the full context; it must be prime (uncertified components are flagged).
std::vector<BasicConstructibleSet> proj1(const Ideal& I, const Ideal& J,
                                         const Polynomial& h, std::size_t split);

// Generic-freeness descriptors (J0, w*v) for V(I0) cap D(h') over V(J0),
// computed from the Rabinowitsch-extended Groebner basis.
std::vector<BasicConstructibleSet> proj2sub(const Ideal& I0, const Ideal& J0,
                                            const Polynomial& hp, const Polynomial& w,
                                            std::size_t split);

// Pair compatibility: over connected sets respecting the output, the
// sections of V(I) cap D(h) and V(I') cap D(h') are identical or disjoint.
std::vector<BasicConstructibleSet> proj2(const Ideal& I, const Ideal& Ip, const Ideal& J,
                                         const Polynomial& h, const Polynomial& hp,
                                         std::size_t split);

struct SimplifyFlags {
    bool dedup = true;
    bool drop_empty = true;
    bool squarefree = true;
    bool factor = true;
    bool discard_open = false;  // full-CAD mode only
};

// Appendix heuristics: duplicate removal via canonical keys, empty-set
// removal via radical membership, square-free reduction, factor splitting of
// principal closed sets, and (optionally) discarding open sets whose
// complement hypersurfaces are all retained. Output sorted by canonical key.
std::vector<BasicConstructibleSet> simplify_sets(std::vector<BasicConstructibleSet> sets,
                                                 const SimplifyFlags& flags = {});

// One projection round: proj1 on every set and proj2 on every pair (both
// orientations), post-processed by simplify_sets.
std::vector<BasicConstructibleSet> cad_projection(
    const std::vector<BasicConstructibleSet>& sets, const SimplifyFlags& flags = {});

// Intersect every set with a constraint elimination ideal (same context);
// emptied sets are dropped. A zero constraint is the identity.
std::vector<BasicConstructibleSet> restrict_to_constraints(
    std::vector<BasicConstructibleSet> sets, const Ideal& constraint);

}  // namespace gcad
