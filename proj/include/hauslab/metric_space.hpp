#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hauslab {

using PointIndex = std::size_t;

/// Relative tolerance for comparisons between floating point distances.
inline constexpr double kTolerance = 1e-12;

/// Coordinate metrics computed on the fly from point coordinates.
enum class CoordinateMetric { euclidean, manhattan, chebyshev, discrete, minkowski };

std::string_view to_string(CoordinateMetric metric);
std::optional<CoordinateMetric> coordinate_metric_from_string(std::string_view name);

/// Point cap used when no explicit one is given: HAUSLAB_MAX_POINTS or 4096.
std::size_t default_max_points();

struct SpaceOptions {
    /// Check the metric axioms at construction (O(n^3) for matrices).
    bool validate = true;
    std::size_t max_points = default_max_points();
};

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/**
 * A finite set of labelled points with a total distance function.
 *
 * The distance is either a coordinate metric evaluated from a flat
 * coordinate buffer or an explicit row-major matrix. Spaces are immutable
 * and always handled through `SpacePtr`; two point sets are comparable
 * only when they share the same space object.
 */
class FiniteMetricSpace {
public:
    static SpacePtr from_coordinates(std::vector<std::string> ids,
                                     std::size_t dimension,
                                     std::vector<double> coordinates,
                                     CoordinateMetric metric,
                                     SpaceOptions options = {},
                                     double minkowski_p = 2.0);

    /// `matrix` is row-major, size() * size() entries.
    static SpacePtr from_matrix(std::vector<std::string> ids,
                                std::vector<double> matrix,
                                SpaceOptions options = {});

    std::size_t size() const noexcept { return ids_.size(); }

    double distance(PointIndex i, PointIndex j) const noexcept {
        if (!matrix_.empty()) {
            return matrix_[i * size() + j];
        }
        return coordinate_distance(i, j);
    }

    const std::string& id(PointIndex i) const { return ids_.at(i); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::optional<PointIndex> find(std::string_view id) const;

    bool has_coordinates() const noexcept { return dimension_ > 0; }
    std::size_t dimension() const noexcept { return dimension_; }
    std::span<const double> coordinates(PointIndex i) const {
        return {coordinates_.data() + i * dimension_, dimension_};
    }

    bool is_matrix() const noexcept { return !matrix_.empty(); }
    std::span<const double> matrix() const noexcept { return matrix_; }
    CoordinateMetric metric() const noexcept { return metric_; }
    double minkowski_p() const noexcept { return p_; }

    /// True when every stored distance is an integer (comparisons are exact).
    bool has_integer_distances() const noexcept { return integer_distances_; }

private:
    FiniteMetricSpace() = default;

    double coordinate_distance(PointIndex i, PointIndex j) const noexcept;
    void index_ids();

    std::vector<std::string> ids_;
    std::unordered_map<std::string, PointIndex> lookup_;
    std::size_t dimension_ = 0;
    std::vector<double> coordinates_;
    CoordinateMetric metric_ = CoordinateMetric::euclidean;
    double p_ = 2.0;
    std::vector<double> matrix_;
    bool integer_distances_ = false;
};

/// One failed metric axiom with the points involved.
struct AxiomWitness {
    std::string axiom;  // "nonnegative", "identity", "symmetry", "triangle"
    std::vector<PointIndex> points;
    std::string detail;
};

/// Checks all four axioms on the raw distance table; empty when the space is a metric.
/// Stops after `limit` witnesses.
std::vector<AxiomWitness> metric_axiom_violations(const FiniteMetricSpace& space,
                                                  std::size_t limit = 16);

/// Tolerant a <= b for distances: exact when both are integral.
inline bool distance_le(double a, double b, double rel = kTolerance) {
    if (a <= b) {
        return true;
    }
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return a - b <= rel * scale;
}

}  // namespace hauslab
