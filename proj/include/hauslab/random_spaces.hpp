#pragma once

#include <vector>

#include "hauslab/point_set.hpp"
#include "hauslab/random.hpp"

namespace hauslab {

/// Shortest-path closure of random integer edge weights in [1, max_weight].
/// Distances are integers, so every comparison on the result is exact.
SpacePtr random_integer_metric(Rng& rng, std::size_t n, int max_weight = 20);

/// n random points in [0, 1)^dimension under the euclidean metric.
SpacePtr random_euclidean_space(Rng& rng, std::size_t n, std::size_t dimension = 2);

/// Uniform random nonempty subset.
PointSet random_subset(Rng& rng, const SpacePtr& space);

/// Seeded family of `count` random subsets (duplicates allowed).
std::vector<PointSet> random_family(Rng& rng, const SpacePtr& space, std::size_t count);

}  // namespace hauslab
