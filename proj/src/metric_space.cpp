#include "hauslab/metric_space.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "hauslab/error.hpp"
#include "hauslab/extended_real.hpp"

namespace hauslab {

namespace {

std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
    }
    return ids;
}

void check_cap(std::size_t n, const SpaceOptions& options) {
    if (n == 0) {
        throw DomainError("a metric space needs at least one point");
    }
    if (n > options.max_points) {
        throw DomainError("space has " + std::to_string(n) + " points, cap is " +
                          std::to_string(options.max_points) +
                          " (set HAUSLAB_MAX_POINTS to raise it)");
    }
}

}  // namespace

std::string_view to_string(CoordinateMetric metric) {
    switch (metric) {
        case CoordinateMetric::euclidean: return "euclidean";
        case CoordinateMetric::manhattan: return "manhattan";
        case CoordinateMetric::chebyshev: return "chebyshev";
        case CoordinateMetric::discrete: return "discrete";
        case CoordinateMetric::minkowski: return "minkowski";
    }
    return "unknown";
}

std::optional<CoordinateMetric> coordinate_metric_from_string(std::string_view name) {
    for (auto m : {CoordinateMetric::euclidean, CoordinateMetric::manhattan,
                   CoordinateMetric::chebyshev, CoordinateMetric::discrete,
                   CoordinateMetric::minkowski}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

std::size_t default_max_points() {
    if (const char* env = std::getenv("HAUSLAB_MAX_POINTS")) {
        std::size_t value = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value > 0) {
            return value;
        }
    }
    return 4096;
}

SpacePtr FiniteMetricSpace::from_coordinates(std::vector<std::string> ids,
                                             std::size_t dimension,
                                             std::vector<double> coordinates,
                                             CoordinateMetric metric,
                                             SpaceOptions options,
                                             double minkowski_p) {
    std::size_t n = ids.size();
    if (n == 0 && dimension > 0) {
        n = coordinates.size() / dimension;
    }
    if (dimension > 0 && coordinates.size() != n * dimension) {
        throw DomainError("coordinate buffer size does not match point count times dimension");
    }
    if (dimension == 0 && metric != CoordinateMetric::discrete) {
        throw DomainError("coordinate metric " + std::string(to_string(metric)) +
                          " needs coordinates");
    }
    check_cap(n, options);
    for (double c : coordinates) {
        if (!std::isfinite(c)) {
            throw DomainError("coordinates must be finite");
        }
    }
    if (metric == CoordinateMetric::minkowski) {
        if (!(minkowski_p >= 1.0)) {
            throw DomainError("minkowski exponent must be >= 1");
        }
        if (std::isinf(minkowski_p)) {
            metric = CoordinateMetric::chebyshev;
        } else if (minkowski_p == 1.0) {
            metric = CoordinateMetric::manhattan;
        } else if (minkowski_p == 2.0) {
            metric = CoordinateMetric::euclidean;
        }
    }

    auto space = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
    space->ids_ = ids.empty() ? default_ids(n) : std::move(ids);
    space->dimension_ = dimension;
    space->coordinates_ = std::move(coordinates);
    space->metric_ = metric;
    space->p_ = minkowski_p;
    space->integer_distances_ = metric == CoordinateMetric::discrete;
    space->index_ids();

    if (options.validate && metric != CoordinateMetric::discrete) {
        // Distinct points need distinct coordinates for d(p,q) > 0.
        std::vector<PointIndex> order(n);
        std::iota(order.begin(), order.end(), PointIndex{0});
        const auto& s = *space;
        auto lex_less = [&s](PointIndex a, PointIndex b) {
            auto ca = s.coordinates(a);
            auto cb = s.coordinates(b);
            return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
        };
        std::sort(order.begin(), order.end(), lex_less);
        for (std::size_t k = 1; k < n; ++k) {
            auto ca = s.coordinates(order[k - 1]);
            auto cb = s.coordinates(order[k]);
            if (std::equal(ca.begin(), ca.end(), cb.begin())) {
                throw MetricViolation("points '" + s.id(order[k - 1]) + "' and '" +
                                      s.id(order[k]) + "' have identical coordinates");
            }
        }
    }
    return space;
}

SpacePtr FiniteMetricSpace::from_matrix(std::vector<std::string> ids,
                                        std::vector<double> matrix,
                                        SpaceOptions options) {
    std::size_t n = ids.size();
    if (n == 0) {
        n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix.size()))));
    }
    if (matrix.size() != n * n) {
        throw DomainError("distance matrix must be square and match the point count");
    }
    check_cap(n, options);

    auto space = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
    space->ids_ = ids.empty() ? default_ids(n) : std::move(ids);
    space->matrix_ = std::move(matrix);
    space->integer_distances_ = std::all_of(space->matrix_.begin(), space->matrix_.end(),
                                            [](double d) { return std::isfinite(d) && d == std::floor(d); });
    space->index_ids();

    if (options.validate) {
        auto witnesses = metric_axiom_violations(*space, 1);
        if (!witnesses.empty()) {
            throw MetricViolation(witnesses.front().axiom + " axiom fails: " +
                                  witnesses.front().detail);
        }
    }
    return space;
}

std::optional<PointIndex> FiniteMetricSpace::find(std::string_view id) const {
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void FiniteMetricSpace::index_ids() {
    lookup_.reserve(ids_.size());
    for (PointIndex i = 0; i < ids_.size(); ++i) {
        if (!lookup_.emplace(ids_[i], i).second) {
            throw DomainError("duplicate point id '" + ids_[i] + "'");
        }
    }
}

double FiniteMetricSpace::coordinate_distance(PointIndex i, PointIndex j) const noexcept {
    if (metric_ == CoordinateMetric::discrete) {
        return i == j ? 0.0 : 1.0;
    }
    const double* a = coordinates_.data() + i * dimension_;
    const double* b = coordinates_.data() + j * dimension_;
    double acc = 0.0;
    switch (metric_) {
        case CoordinateMetric::euclidean:
            for (std::size_t k = 0; k < dimension_; ++k) {
                const double t = a[k] - b[k];
                acc += t * t;
            }
            return std::sqrt(acc);
        case CoordinateMetric::manhattan:
            for (std::size_t k = 0; k < dimension_; ++k) {
                acc += std::abs(a[k] - b[k]);
            }
            return acc;
        case CoordinateMetric::chebyshev:
            for (std::size_t k = 0; k < dimension_; ++k) {
                acc = std::max(acc, std::abs(a[k] - b[k]));
            }
            return acc;
        case CoordinateMetric::minkowski:
            for (std::size_t k = 0; k < dimension_; ++k) {
                acc += std::pow(std::abs(a[k] - b[k]), p_);
            }
            return std::pow(acc, 1.0 / p_);
        case CoordinateMetric::discrete:
            break;
    }
    return acc;
}

std::vector<AxiomWitness> metric_axiom_violations(const FiniteMetricSpace& space,
                                                  std::size_t limit) {
    std::vector<AxiomWitness> out;
    const std::size_t n = space.size();
    auto emit = [&](std::string axiom, std::vector<PointIndex> pts, std::string detail) {
        out.push_back({std::move(axiom), std::move(pts), std::move(detail)});
        return out.size() >= limit;
    };
    auto pair_detail = [&](PointIndex i, PointIndex j) {
        return "d(" + space.id(i) + "," + space.id(j) + ") = " + format_real(space.distance(i, j));
    };

    for (PointIndex i = 0; i < n; ++i) {
        for (PointIndex j = 0; j < n; ++j) {
            const double d = space.distance(i, j);
            if (!(d >= 0.0) || !std::isfinite(d)) {
                if (emit("nonnegative", {i, j}, pair_detail(i, j))) return out;
            } else if ((i == j) != (d == 0.0)) {
                if (emit("identity", {i, j}, pair_detail(i, j))) return out;
            } else if (j > i && d != space.distance(j, i)) {
                if (emit("symmetry", {i, j}, pair_detail(i, j) + " but " + pair_detail(j, i))) return out;
            }
        }
    }
    if (!out.empty() || !space.is_matrix()) {
        return out;
    }
    const bool exact = space.has_integer_distances();
    for (PointIndex i = 0; i < n; ++i) {
        for (PointIndex k = i + 1; k < n; ++k) {
            const double dik = space.distance(i, k);
            for (PointIndex j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double via = space.distance(i, j) + space.distance(j, k);
                const bool ok = exact ? dik <= via : distance_le(dik, via);
                if (!ok) {
                    if (emit("triangle", {i, j, k},
                             pair_detail(i, k) + " > " + pair_detail(i, j) + " + " + pair_detail(j, k))) {
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace hauslab
