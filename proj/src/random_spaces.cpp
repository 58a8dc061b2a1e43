#include "hauslab/random_spaces.hpp"

#include <algorithm>

namespace hauslab {

SpacePtr random_integer_metric(Rng& rng, std::size_t n, int max_weight) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = static_cast<double>(rng.between(1, max_weight));
            d[i * n + j] = w;
            d[j * n + i] = w;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
            }
        }
    }
    return FiniteMetricSpace::from_matrix({}, std::move(d));
}

SpacePtr random_euclidean_space(Rng& rng, std::size_t n, std::size_t dimension) {
    std::vector<double> coords(n * dimension);
    for (auto& c : coords) {
        c = rng.uniform();
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("q" + std::to_string(i));
    }
    return FiniteMetricSpace::from_coordinates(std::move(ids), dimension, std::move(coords),
                                               CoordinateMetric::euclidean);
}

PointSet random_subset(Rng& rng, const SpacePtr& space) {
    std::vector<PointIndex> members;
    while (members.empty()) {
        for (PointIndex i = 0; i < space->size(); ++i) {
            if (rng.coin()) {
                members.push_back(i);
            }
        }
    }
    return PointSet(space, std::move(members));
}

std::vector<PointSet> random_family(Rng& rng, const SpacePtr& space, std::size_t count) {
    std::vector<PointSet> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(random_subset(rng, space));
    }
    return out;
}

}  // namespace hauslab
