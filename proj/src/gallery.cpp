#include "hauslab/gallery.hpp"

#include <cmath>
#include <limits>

#include "hauslab/error.hpp"
#include "hauslab/json_support.hpp"
#include "hauslab/random_spaces.hpp"

namespace hauslab::gallery {

namespace {

SpaceOptions grid_options() {
    SpaceOptions o;
    o.max_points = kGridCap;
    return o;
}

std::size_t reciprocal_steps(double pitch, const char* who) {
    if (!(pitch > 0.0)) {
        throw DomainError(std::string(who) + ": pitch must be positive");
    }
    const double inv = 1.0 / pitch;
    const double rounded = std::round(inv);
    if (std::abs(inv - rounded) > 1e-6 * rounded) {
        throw DomainError(std::string(who) + ": 1/pitch must be an integer");
    }
    return static_cast<std::size_t>(rounded);
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw DomainError(message);
    }
}

std::vector<PointIndex> range_indices(std::size_t lo, std::size_t hi) {
    std::vector<PointIndex> out;
    for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

}  // namespace

double power_gap(std::size_t n) {
    const double nd = static_cast<double>(n);
    return std::pow(nd / (nd + 1.0), nd) / (nd + 1.0);
}

NestedFamily power_functions(double pitch, std::size_t i_max, std::size_t n_max) {
    require(pitch <= 1e-2, "power_functions: pitch must be <= 1e-2");
    const std::size_t steps = reciprocal_steps(pitch, "power_functions");
    require(n_max >= 1, "power_functions: n_max must be >= 1");
    require(i_max >= n_max + 10, "power_functions: i_max must be >= n_max + 10");

    const std::size_t samples = steps + 1;
    std::vector<double> coords(i_max * samples);
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= i_max; ++i) {
        ids.push_back("x" + std::to_string(i));
        for (std::size_t k = 0; k < samples; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(steps);
            coords[(i - 1) * samples + k] = std::pow(t, static_cast<double>(i));
        }
    }
    auto space = FiniteMetricSpace::from_coordinates(std::move(ids), samples, std::move(coords),
                                                     CoordinateMetric::chebyshev, grid_options());
    auto gen = [space, i_max](std::size_t n) {
        return PointSet(space, range_indices(n - 1, i_max - 1));
    };
    return NestedFamily(space, gen, "power_functions",
                        {{"pitch", pitch}, {"i_max", i_max}, {"n_max", n_max}}, n_max);
}

bool parabolic_contains(std::size_t n, double x, double y) {
    return 4.0 * static_cast<double>(n) * std::abs(y) + x * x <= 4.0 + 1e-9;
}

NestedFamily parabolic_regions(double pitch, std::size_t n_max) {
    require(pitch > 0.0 && pitch <= 1e-2, "parabolic_regions: pitch must lie in (0, 1e-2]");
    require(n_max >= 1, "parabolic_regions: n_max must be >= 1");
    const auto half = static_cast<long>(std::floor(2.5 / pitch + 1e-9));
    std::vector<double> coords;
    std::vector<std::string> ids;
    for (long j = -half; j <= half; ++j) {
        for (long i = -half; i <= half; ++i) {
            const double x = static_cast<double>(i) * pitch;
            const double y = static_cast<double>(j) * pitch;
            coords.push_back(x);
            coords.push_back(y);
            ids.push_back("(" + format_real(x) + "," + format_real(y) + ")");
        }
    }
    auto space = FiniteMetricSpace::from_coordinates(std::move(ids), 2, std::move(coords),
                                                     CoordinateMetric::euclidean, grid_options());
    auto gen = [space](std::size_t n) {
        std::vector<PointIndex> members;
        for (PointIndex p = 0; p < space->size(); ++p) {
            auto c = space->coordinates(p);
            if (parabolic_contains(n, c[0], c[1])) members.push_back(p);
        }
        return PointSet(space, std::move(members));
    };
    std::vector<PointIndex> segment;
    for (PointIndex p = 0; p < space->size(); ++p) {
        auto c = space->coordinates(p);
        if (c[1] == 0.0 && std::abs(c[0]) <= 2.0 + 1e-9) segment.push_back(p);
    }
    return NestedFamily(space, gen, "parabolic_regions", {{"pitch", pitch}, {"n_max", n_max}}, n_max,
                        PointSet(space, std::move(segment)));
}

NestedFamily lp_basis(double p, std::size_t dim, std::size_t n_max) {
    require(p >= 1.0, "lp_basis: p must lie in [1, inf]");
    require(n_max >= 1, "lp_basis: n_max must be >= 1");
    require(dim >= n_max + 1, "lp_basis: dim must be >= n_max + 1");
    std::vector<double> coords(dim * dim, 0.0);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < dim; ++i) {
        coords[i * dim + i] = 1.0;
        ids.push_back("e" + std::to_string(i + 1));
    }
    auto space = FiniteMetricSpace::from_coordinates(std::move(ids), dim, std::move(coords),
                                                     CoordinateMetric::minkowski, grid_options(), p);
    auto gen = [space, dim](std::size_t n) { return PointSet(space, range_indices(n - 1, dim - 1)); };
    nlohmann::json params{{"dim", dim}, {"n_max", n_max}};
    params["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
    return NestedFamily(space, gen, "lp_basis", params, n_max);
}

NestedFamily shrinking_intervals(double pitch, std::size_t n_max) {
    const std::size_t steps = reciprocal_steps(pitch, "shrinking_intervals");
    require(n_max >= 1, "shrinking_intervals: n_max must be >= 1");
    const auto m = static_cast<long>(steps);
    std::vector<double> coords;
    std::vector<std::string> ids;
    for (long k = -m; k <= m; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(m);
        coords.push_back(x);
        ids.push_back(format_real(x));
    }
    auto space = FiniteMetricSpace::from_coordinates(std::move(ids), 1, std::move(coords),
                                                     CoordinateMetric::euclidean, grid_options());
    // |k / m| <= 1/n  <=>  |k| * n <= m, decided in integers.
    auto gen = [space, m](std::size_t n) {
        std::vector<PointIndex> members;
        for (long k = -m; k <= m; ++k) {
            if (std::abs(k) * static_cast<long>(n) <= m) members.push_back(static_cast<PointIndex>(k + m));
        }
        return PointSet(space, std::move(members));
    };
    return NestedFamily(space, gen, "shrinking_intervals", {{"pitch", pitch}, {"n_max", n_max}}, n_max,
                        PointSet::singleton(space, static_cast<PointIndex>(m)));
}

PointIndex atsuji_point(std::size_t n, std::size_t m, std::size_t m_max) {
    return (n - 1) * (m_max + 1) + m;
}

SpacePtr atsuji_union(std::size_t n_max, std::size_t m_max) {
    require(n_max >= 2 && m_max >= 2, "atsuji_union: n_max and m_max must be >= 2");
    std::vector<double> coords;
    std::vector<std::string> ids;
    for (std::size_t n = 1; n <= n_max; ++n) {
        coords.push_back(static_cast<double>(n));
        ids.push_back(std::to_string(n));
        for (std::size_t m = 1; m <= m_max; ++m) {
            coords.push_back(static_cast<double>(n) + 1.0 / (2.0 * static_cast<double>(m)));
            ids.push_back(std::to_string(n) + "+1/" + std::to_string(2 * m));
        }
    }
    return FiniteMetricSpace::from_coordinates(std::move(ids), 1, std::move(coords),
                                               CoordinateMetric::euclidean, grid_options());
}

NestedFamily atsuji_tails(std::size_t n_max, std::size_t m_max) {
    auto space = atsuji_union(n_max, m_max);
    auto gen = [space, n_max, m_max](std::size_t j) {
        std::vector<PointIndex> members;
        for (std::size_t n = 1; n <= n_max; ++n) {
            members.push_back(atsuji_point(n, 0, m_max));
            for (std::size_t m = std::max<std::size_t>(j, 1); m <= m_max; ++m) {
                members.push_back(atsuji_point(n, m, m_max));
            }
        }
        return PointSet(space, std::move(members));
    };
    std::vector<PointIndex> integers;
    for (std::size_t n = 1; n <= n_max; ++n) integers.push_back(atsuji_point(n, 0, m_max));
    return NestedFamily(space, gen, "atsuji_union", {{"n_max", n_max}, {"m_max", m_max}}, m_max + 1,
                        PointSet(space, std::move(integers)));
}

namespace {

nlohmann::json witness_json(const ComplementWitness& w) {
    const auto& space = *w.space;
    nlohmann::json points = nlohmann::json::array();
    for (PointIndex i = 0; i < space.size(); ++i) {
        nlohmann::json p{{"id", space.id(i)}};
        if (space.has_coordinates()) {
            auto c = space.coordinates(i);
            p["coords"] = std::vector<double>(c.begin(), c.end());
        }
        points.push_back(std::move(p));
    }
    nlohmann::json j;
    j["trial"] = w.trial;
    j["space"] = {{"points", points}};
    if (space.is_matrix()) {
        const std::size_t n = space.size();
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(std::vector<double>(space.matrix().begin() + i * n, space.matrix().begin() + (i + 1) * n));
        }
        j["space"]["metric"] = {{"matrix", rows}};
    } else {
        j["space"]["metric"] = std::string(to_string(space.metric()));
    }
    const PointSet a(w.space, w.a), b(w.space, w.b);
    j["A"] = a;
    j["B"] = b;
    j["X_minus_A"] = Complement(a).to_point_set()->ids();
    j["X_minus_B"] = Complement(b).to_point_set()->ids();
    j["H(A,B)"] = w.h_sets;
    j["H(X\\A,X\\B)"] = w.h_complements;
    return j;
}

SpacePtr line_space(std::initializer_list<double> xs) {
    std::vector<std::string> ids;
    for (double x : xs) ids.push_back(format_real(x));
    return FiniteMetricSpace::from_coordinates(std::move(ids), 1, std::vector<double>(xs),
                                               CoordinateMetric::euclidean);
}

}  // namespace

nlohmann::json WitnessSearchReport::to_json() const {
    nlohmann::json j;
    j["trials_run"] = trials_run;
    j["pairs_examined"] = pairs_examined;
    j["greater_count"] = greater_count;
    j["less_count"] = less_count;
    j["equal_count"] = equal_count;
    j["greater"] = greater ? witness_json(*greater) : nlohmann::json(nullptr);
    j["less"] = less ? witness_json(*less) : nlohmann::json(nullptr);
    j["found_both"] = found_both();
    return j;
}

WitnessSearchReport complement_witness_search(std::size_t space_size, std::size_t trials,
                                              std::uint64_t seed) {
    require(space_size >= 4 && space_size <= 64, "complement_witness_search: space_size must lie in [4, 64]");
    WitnessSearchReport report;
    const Rng root(seed);

    auto examine = [&](std::size_t trial, const SpacePtr& space, std::vector<PointIndex> a,
                       std::vector<PointIndex> b) {
        const PointSet sa(space, a), sb(space, b);
        ++report.pairs_examined;
        const double h = hausdorff(sa, sb).value();
        const double hc = complement_hausdorff(sa, sb)->value();
        ComplementWitness w{trial, space, std::move(a), std::move(b), h, hc};
        if (hc > h) {
            ++report.greater_count;
            if (!report.greater) report.greater = std::move(w);
        } else if (hc < h) {
            ++report.less_count;
            if (!report.less) report.less = std::move(w);
        } else {
            ++report.equal_count;
        }
    };

    for (std::size_t t = 0; t < trials && !report.found_both(); ++t) {
        ++report.trials_run;
        if (t == 0) {
            examine(0, line_space({0, 1, 2, 3}), {0, 1, 2}, {1, 2, 3});
            continue;
        }
        Rng rng = root.split(t);
        const auto n = static_cast<std::size_t>(rng.between(4, static_cast<std::int64_t>(space_size)));
        SpacePtr space;
        switch (t % 3) {
            case 0: space = random_integer_metric(rng, n); break;
            case 1: space = random_euclidean_space(rng, n, 1); break;
            default: space = random_euclidean_space(rng, n, 2); break;
        }
        for (int attempt = 0; attempt < 32; ++attempt) {
            std::vector<PointIndex> a, b;
            for (PointIndex x = 0; x < n; ++x) {
                if (rng.coin()) a.push_back(x);
                if (rng.coin()) b.push_back(x);
            }
            if (a.empty() || b.empty()) continue;
            const PointSet sa(space, a), sb(space, b);
            if (disjoint(sa, sb) || sa.is_subset_of(sb) || sb.is_subset_of(sa)) continue;
            examine(t, space, std::move(a), std::move(b));
            break;
        }
    }
    return report;
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"power_functions", "parabolic_regions", "lp_basis",
                                                "shrinking_intervals", "atsuji_union"};
    return names;
}

namespace {

double param_real(const nlohmann::json& params, const char* key, double fallback) {
    if (!params.contains(key)) return fallback;
    const auto& v = params.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (const std::exception&) {
        }
    }
    throw DomainError(std::string("parameter '") + key + "' must be a number");
}

std::size_t param_index(const nlohmann::json& params, const char* key, std::size_t fallback) {
    const double d = param_real(params, key, static_cast<double>(fallback));
    if (!(d >= 0.0) || d != std::floor(d)) {
        throw DomainError(std::string("parameter '") + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(d);
}

}  // namespace

NestedFamily make_family(const std::string& name, const nlohmann::json& params) {
    if (name == "power_functions") {
        const auto n_max = param_index(params, "n_max", 16);
        return power_functions(param_real(params, "pitch", 1e-3), param_index(params, "i_max", std::max<std::size_t>(200, n_max + 10)), n_max);
    }
    if (name == "parabolic_regions") {
        return parabolic_regions(param_real(params, "pitch", 1e-2), param_index(params, "n_max", 9));
    }
    if (name == "lp_basis") {
        const auto n_max = param_index(params, "n_max", 16);
        return lp_basis(param_real(params, "p", 2.0), param_index(params, "dim", n_max + 1), n_max);
    }
    if (name == "shrinking_intervals") {
        return shrinking_intervals(param_real(params, "pitch", 1e-3), param_index(params, "n_max", 16));
    }
    if (name == "atsuji_union") {
        return atsuji_tails(param_index(params, "n_max", 3), param_index(params, "m_max", 50));
    }
    throw DomainError("unknown gallery '" + name + "'");
}

std::vector<std::pair<NestedFamily, std::size_t>> reference_families() {
    std::vector<std::pair<NestedFamily, std::size_t>> out;
    out.emplace_back(power_functions(1e-3, 200, 16), 16);
    out.emplace_back(parabolic_regions(1e-2, 9), 9);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        out.emplace_back(lp_basis(p, 17, 16), 16);
    }
    out.emplace_back(shrinking_intervals(1e-2, 100), 100);
    out.emplace_back(atsuji_tails(3, 50), 51);
    return out;
}

double default_tolerance(const NestedFamily& family) {
    const auto& params = family.params();
    if (params.contains("pitch") && params.at("pitch").is_number()) {
        return 2.0 * params.at("pitch").get<double>();
    }
    return 1e-12;
}

}  // namespace hauslab::gallery
