#pragma once

#include <optional>

#include "hauslab/extended_real.hpp"
#include "hauslab/point_set.hpp"

namespace hauslab {

/// Worker count for the outer sup loops. Results never depend on it.
struct Parallelism {
    unsigned threads = 1;
};

/// d(x, A) = min over y in A of d(x, y).
ExtendedReal dist_point_to_set(PointIndex x, const PointSet& a);
/// d(x, X \ A); +infinity when the complement is empty.
ExtendedReal dist_point_to_set(PointIndex x, const Complement& a);
/// Checked form: throws AmbientMismatch when `space` is not the ambient of `a`.
ExtendedReal dist_point_to_set(const FiniteMetricSpace& space, PointIndex x, const PointSet& a);

/// Lowest-index point of `a` nearest to x.
PointIndex nearest_point(PointIndex x, const PointSet& a);

/// sup over x in A of d(x, B). Zero exactly when A is a subset of B.
ExtendedReal directed_hausdorff(const PointSet& a, const PointSet& b, Parallelism par = {});

/// Pair (x, y) realising the directed distance: x is the lowest-index maximiser,
/// y the lowest-index nearest point of B to x.
struct DirectedWitness {
    PointIndex from;
    PointIndex to;
    double distance;
};
DirectedWitness directed_hausdorff_witness(const PointSet& a, const PointSet& b);

/// H(A, B) = max of the two directed distances.
ExtendedReal hausdorff(const PointSet& a, const PointSet& b, Parallelism par = {});

/// Smallest candidate radius r (0 or a pairwise distance between A and B) with
/// A inside the closed r-neighbourhood of B and vice versa. Computed without
/// point-to-set distances so it can serve as an independent check of `hausdorff`.
ExtendedReal hausdorff_via_neighborhoods(const PointSet& a, const PointSet& b);

/// N_eps(A): points at distance strictly less than eps from A.
PointSet neighborhood(const PointSet& a, double eps);

/// Largest pairwise distance inside A.
double diameter(const PointSet& a, Parallelism par = {});

Complement complement(const PointSet& a);

/// sup over x in A of d(x, X \ A); +infinity when A is the whole space.
ExtendedReal gap_functional(const PointSet& a);

/// d(x, X \ {x}). Needs at least two points.
double isolation(const FiniteMetricSpace& space, PointIndex x);

/// One inequality of the complement lemma, both sides evaluated.
struct ClauseResult {
    bool applicable = false;  ///< hypothesis of the clause holds
    bool vacuous = false;     ///< applicable but a complement is empty
    ExtendedReal lhs;
    ExtendedReal rhs;
    bool satisfied = true;
};

/// Clauses:
///  (a) H(X\A, X\B) <= max(d^(A), d^(B))          always
///  (b) max(d^(A), d^(B)) <= H(A, B)              when A and B are disjoint
///  (c) H(X\A, X\B) <= d^(B)                      when A is a subset of B
///      (evaluated with the roles swapped when B is a subset of A)
struct ComplementReport {
    ClauseResult a;
    ClauseResult b;
    ClauseResult c;
    bool all_satisfied() const { return a.satisfied && b.satisfied && c.satisfied; }
};

ComplementReport complement_hausdorff_inequalities(const PointSet& a, const PointSet& b);

/// H(X\A, X\B), nullopt when either complement is empty.
std::optional<ExtendedReal> complement_hausdorff(const PointSet& a, const PointSet& b);

}  // namespace hauslab
