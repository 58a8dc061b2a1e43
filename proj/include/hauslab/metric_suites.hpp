#pragma once

#include <cstdint>

#include "hauslab/hausdorff.hpp"
#include "hauslab/suite.hpp"

namespace hauslab {

/// Largest space on which the set-level suites enumerate every subset pair.
inline constexpr std::size_t kExhaustiveLimit = 6;

/**
 * Metric axioms on one space.
 *
 * Point level: the raw distance table (catches corrupted matrices).
 * Set level, when the space has at most `kExhaustiveLimit` points: for all
 * nonempty A, B, C
 *   H >= 0, H(A,B) = H(B,A), H(A,B) = 0 iff A = B,
 *   H(A,C) <= H(A,B) + H(B,C),
 *   H(A,B) == hausdorff_via_neighborhoods(A,B),
 *   directed(A,B) = 0 iff A is a subset of B.
 * Integer metrics are compared exactly, others with the relative tolerance.
 */
void check_metric_axioms(const SpacePtr& space, SuiteReport& report);

/// `check_metric_axioms` over `spaces` seeded random integer metrics of 1..6 points.
SuiteReport metric_axiom_suite(std::uint64_t seed, std::size_t spaces = 50);

/// `check_metric_axioms` on a given space.
SuiteReport metric_axiom_suite(const SpacePtr& space);

/// Complement lemma clauses on random subset pairs of random `size`-point
/// spaces. Pairs are drawn in rotation as unconstrained, disjoint and
/// nested so every clause gets exercised.
SuiteReport lemma_complement_suite(std::uint64_t seed, std::size_t trials = 500,
                                   std::size_t size = 8);

}  // namespace hauslab
