#pragma once

#include <string>

#include "hauslab/metric_space.hpp"

namespace fixtures {

/// a=(0,0), b=(3,0), c=(0,4) under the euclidean metric.
inline hauslab::SpacePtr x3() {
    return hauslab::FiniteMetricSpace::from_coordinates({"a", "b", "c"}, 2, {0, 0, 3, 0, 0, 4},
                                                        hauslab::CoordinateMetric::euclidean);
}

/// Points of the real line at the given positions, ids "0", "1", ...
inline hauslab::SpacePtr line(std::vector<double> xs) {
    return hauslab::FiniteMetricSpace::from_coordinates({}, 1, std::move(xs),
                                                        hauslab::CoordinateMetric::euclidean);
}

inline std::string path(const std::string& name) { return std::string(HAUSLAB_FIXTURES) + "/" + name; }

}  // namespace fixtures
