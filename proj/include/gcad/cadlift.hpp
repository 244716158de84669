#pragma once

#include <vector>

#include "cadproject.hpp"
#include "fiberclass.hpp"
#include "formula.hpp"
#include "realalg.hpp"

namespace gcad {

enum class CellKind { Point, Interval, Section, Band };

struct Cell {
    std::size_t level = 1;
    CellKind kind = CellKind::Point;
    std::size_t index = 0;  // section/band ordinal within the parent fiber
    std::vector<RealAlgebraicNumber> sample;  // one coordinate per level
    long parent = -1;                         // index into the previous level's list
    std::vector<std::size_t> path;            // child ordinal per level: cell identity
    std::vector<bool> inside;                 // membership per set of that level
    std::size_t dim = 0;                      // number of Interval/Band coordinates
};

struct CellTree {
    VarsPtr vars;
    std::vector<std::vector<BasicConstructibleSet>> precells;  // [i-1]: level-i sets
    std::vector<std::vector<Cell>> levels;                     // [i-1]: level-i cells
    bool certified = true;
};

enum class LiftMode { Full, RelevantOnly };

// Sections and bands of the fiber line over `cell`: merged deduplicated real
// roots of each set's equations at the cell sample, filtered by the set's
// inequation (a set whose equations vanish identically on the line contributes
// the roots of its inequation instead), with bands between and beyond.
// Membership tags are computed exactly against precells_i; parent index and
// the last path ordinal are left for the caller to assign.
std::vector<Cell> lift_cell(const Cell& cell,
                            const std::vector<BasicConstructibleSet>& precells_i);

// Algorithm: project the input sets level by level, partition the line at
// level 1, then lift cell by cell. Every input set is a union of level-n
// cells; relevant-only mode keeps only cells inside some set of their level.
CellTree geometric_cad(const std::vector<BasicConstructibleSet>& sets,
                       LiftMode mode = LiftMode::Full, const SimplifyFlags& flags = {});

// Truth of a closed prenex formula: CAD of the atom varieties plus the
// complement open set, truth at level-n samples folded up by the quantifiers.
bool decide(const PrenexFormula& phi);

struct RealCountRegion {
    Cell cell;  // a cell of level param_count
    FiberCount count;
};

// Number of real points of V(I) cap D(h) over each parameter-space cell; the
// count is infinite when a cell of higher dimension lies inside the set.
std::vector<RealCountRegion> classify_real(const Ideal& I, const Polynomial& h,
                                           std::size_t param_count);

// CAD of {L cap V(g), g in targets; L cap D(prod targets)} for the constraint
// locus L = V(eq) cap D(ineq), with every projection level intersected with
// the matching elimination ideal of <eq, z*ineq - 1> and relevant-only
// lifting by default.
CellTree cad_with_constraints(const Ideal& eq, const Polynomial& ineq,
                              const std::vector<Polynomial>& targets,
                              LiftMode mode = LiftMode::RelevantOnly);

}  // namespace gcad
