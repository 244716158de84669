#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "upoly.hpp"

namespace gcad {

// Thrown when an interval-refinement loop exceeds the configured step limit.
// Exactness is the contract: budget exhaustion is an error, never a silent
// approximation.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};

// Per-operation cap on refinement steps (bisections) in any single call.
void set_refine_limit(std::size_t n);
std::size_t refine_limit();

// A real algebraic number: a square-free defining polynomial together with an
// open isolating interval holding exactly one of its real roots (verified by
// a Sturm count on construction), or an exact rational. Refinement narrows
// the shared interval in place; copies observe the improvement.
class RealAlgebraicNumber {
   public:
    RealAlgebraicNumber();  // zero
    static RealAlgebraicNumber from_rational(const Rational& v);
    RealAlgebraicNumber(UPoly defining, Rational lo, Rational hi);

    bool is_rational() const;
    Rational rational_value() const;
    const UPoly& defining() const;
    Rational lo() const;
    Rational hi() const;

    void refine() const;  // halve the isolating interval
    void refine_below(const Rational& width) const;
    Rational mid() const;
    double to_double() const;
    std::string str() const;

   private:
    struct Rep;
    std::shared_ptr<Rep> rep;
};

// Exact sign of q at alpha; q is univariate in alpha's variable.
int sign_at(const UPoly& q, const RealAlgebraicNumber& alpha);

// Exact total order: -1, 0, +1.
int compare(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b);

// Distinct real roots of p, strictly increasing, with pairwise disjoint
// isolating intervals. Defining polynomials are the irreducible factors of p
// when the factorization is proven.
std::vector<RealAlgebraicNumber> isolate_roots(const UPoly& p);
std::vector<RealAlgebraicNumber> isolate_roots(const Polynomial& p);

// Sturm oracle: number of distinct real roots (whole line / half-open (a,b]).
// The interval version requires nonvanishing endpoints.
std::size_t sturm_count(const UPoly& p);
std::size_t sturm_count(const UPoly& p, const Rational& a, const Rational& b);

// Exact sign of q at an algebraic point covering q's used variables. The
// value is certified against the iterated resultant of t - q over the
// coordinates' defining polynomials.
int sign_at_point(const Polynomial& q, const std::vector<RealAlgebraicNumber>& point);

struct SampleRoots {
    bool identically_zero = false;
    std::vector<RealAlgebraicNumber> roots;  // strictly increasing
};

// Distinct real roots in the last variable of p specialized at sample
// (one coordinate per remaining variable). Candidates come from iterated
// resultants; membership is certified by an endpoint sign change or an exact
// sign_at_point test.
SampleRoots roots_at_sample(const Polynomial& p,
                            const std::vector<RealAlgebraicNumber>& sample);

struct Level1Cell {
    bool is_point = false;
    RealAlgebraicNumber point;  // the root, when is_point
    Rational sample{0};         // rational interior sample, when an interval

    RealAlgebraicNumber sample_ran() const {
        return is_point ? point : RealAlgebraicNumber::from_rational(sample);
    }
};

// Sign-invariant partition of the line for a set of univariate polynomials:
// a point at every real root of the product, open intervals between and
// beyond, with midpoint samples (+-1 past the extremes).
std::vector<Level1Cell> partition1d(const std::vector<Polynomial>& polys);

}  // namespace gcad
