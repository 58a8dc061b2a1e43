#pragma once

// Brute-force reference computations. They read only the raw distance
// function and never call the library's set routines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hauslab/metric_space.hpp"

namespace oracle {

using Indices = std::vector<std::size_t>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double point_to_set(const hauslab::FiniteMetricSpace& s, std::size_t x, const Indices& a) {
    double best = kInf;
    for (auto y : a) best = std::min(best, s.distance(x, y));
    return best;
}

inline double directed(const hauslab::FiniteMetricSpace& s, const Indices& a, const Indices& b) {
    double worst = 0.0;
    for (auto x : a) worst = std::max(worst, point_to_set(s, x, b));
    return worst;
}

inline double hausdorff(const hauslab::FiniteMetricSpace& s, const Indices& a, const Indices& b) {
    return std::max(directed(s, a, b), directed(s, b, a));
}

inline double diameter(const hauslab::FiniteMetricSpace& s, const Indices& a) {
    double d = 0.0;
    for (auto x : a)
        for (auto y : a) d = std::max(d, s.distance(x, y));
    return d;
}

inline Indices complement(const hauslab::FiniteMetricSpace& s, const Indices& a) {
    Indices out;
    for (std::size_t x = 0; x < s.size(); ++x)
        if (std::find(a.begin(), a.end(), x) == a.end()) out.push_back(x);
    return out;
}

/// sup over A of d(x, X \ A), +inf on the full space.
inline double gap(const hauslab::FiniteMetricSpace& s, const Indices& a) {
    const auto rest = complement(s, a);
    if (rest.empty()) return kInf;
    return directed(s, a, rest);
}

/// Max of t^n - t^{n+1} over t = k / samples.
inline double power_gap_grid(std::size_t n, std::size_t samples) {
    double best = 0.0;
    for (std::size_t k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(samples);
        best = std::max(best, std::pow(t, n) - std::pow(t, n + 1));
    }
    return best;
}

/// Extremes of d(Tx, Ty) / d(x, y) over x != y.
inline std::pair<double, double> ratio_extremes(const hauslab::FiniteMetricSpace& x_space,
                                                const hauslab::FiniteMetricSpace& y_space,
                                                const std::vector<std::size_t>& table) {
    double sup = 0.0, inf = kInf;
    for (std::size_t i = 0; i < x_space.size(); ++i)
        for (std::size_t j = i + 1; j < x_space.size(); ++j) {
            const double r = y_space.distance(table[i], table[j]) / x_space.distance(i, j);
            sup = std::max(sup, r);
            inf = std::min(inf, r);
        }
    return {sup, inf};
}

}  // namespace oracle
