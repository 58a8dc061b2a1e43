#include "hauslab/lift.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "hauslab/error.hpp"
#include "hauslab/json_support.hpp"
#include "hauslab/metric_suites.hpp"
#include "hauslab/random_spaces.hpp"

namespace hauslab {

namespace {

constexpr std::size_t kMaxMapDomain = 2048;

std::vector<PointSet> distinct(std::span<const PointSet> family) {
    std::vector<PointSet> out;
    for (const auto& s : family) {
        if (std::find(out.begin(), out.end(), s) == out.end()) {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

PointMap::PointMap(SpacePtr domain, SpacePtr codomain, std::vector<PointIndex> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    if (!domain_ || !codomain_) {
        throw DomainError("point map needs a domain and a codomain");
    }
    if (table_.size() != domain_->size()) {
        throw DomainError("map table must assign every domain point");
    }
    std::vector<std::uint8_t> hit(codomain_->size(), 0);
    injective_ = true;
    for (auto y : table_) {
        if (y >= codomain_->size()) {
            throw DomainError("map value " + std::to_string(y) + " outside the codomain");
        }
        if (hit[y]) {
            injective_ = false;
        }
        hit[y] = 1;
    }
    surjective_ = std::all_of(hit.begin(), hit.end(), [](std::uint8_t h) { return h != 0; });
}

PointMap PointMap::identity(const SpacePtr& space) {
    std::vector<PointIndex> table(space->size());
    std::iota(table.begin(), table.end(), PointIndex{0});
    return PointMap(space, space, std::move(table));
}

PointMap PointMap::constant(const SpacePtr& domain, const SpacePtr& codomain, PointIndex value) {
    return PointMap(domain, codomain, std::vector<PointIndex>(domain->size(), value));
}

std::optional<PointMap> PointMap::inverse() const {
    if (!injective_ || !surjective_) {
        return std::nullopt;
    }
    std::vector<PointIndex> inv(codomain_->size());
    for (PointIndex x = 0; x < table_.size(); ++x) {
        inv[table_[x]] = x;
    }
    return PointMap(codomain_, domain_, std::move(inv));
}

PointSet lift_set(const PointMap& map, const PointSet& a) {
    if (a.space_ptr() != map.domain()) {
        throw AmbientMismatch("set does not live in the map's domain");
    }
    std::vector<PointIndex> image;
    image.reserve(a.size());
    for (auto x : a.members()) {
        image.push_back(map(x));
    }
    return PointSet(map.codomain(), std::move(image));
}

MapConstants map_constants(const PointMap& map) {
    const auto& dom = *map.domain();
    const auto& cod = *map.codomain();
    if (dom.size() < 2) {
        throw DomainError("map constants need a domain with at least two points");
    }
    if (dom.size() > kMaxMapDomain) {
        throw DomainError("map domain exceeds " + std::to_string(kMaxMapDomain) + " points");
    }
    MapConstants c{0.0, std::numeric_limits<double>::infinity()};
    for (PointIndex x = 0; x < dom.size(); ++x) {
        for (PointIndex y = x + 1; y < dom.size(); ++y) {
            const double ratio = cod.distance(map(x), map(y)) / dom.distance(x, y);
            c.lipschitz_sup = std::max(c.lipschitz_sup, ratio);
            c.expansive_inf = std::min(c.expansive_inf, ratio);
        }
    }
    return c;
}

MapConstants lifted_constants(const PointMap& map, std::span<const PointSet> family, Parallelism par) {
    const auto sets = distinct(family);
    if (sets.size() < 2) {
        throw DomainError("lifted constants need at least two distinct sets");
    }
    std::vector<PointSet> images;
    images.reserve(sets.size());
    for (const auto& s : sets) {
        images.push_back(lift_set(map, s));
    }
    MapConstants c{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const double base = hausdorff(sets[i], sets[j], par).value();
            const double ratio = hausdorff(images[i], images[j], par).value() / base;
            c.lipschitz_sup = std::max(c.lipschitz_sup, ratio);
            c.expansive_inf = std::min(c.expansive_inf, ratio);
        }
    }
    return c;
}

std::optional<PointIndex> SetSpace::index_of(const PointSet& set) const {
    auto it = std::find(elements_.begin(), elements_.end(), set);
    if (it == elements_.end()) {
        return std::nullopt;
    }
    return static_cast<PointIndex>(it - elements_.begin());
}

std::vector<PointSet> SetSpace::unpack(const PointSet& set) const {
    if (set.space_ptr() != space_) {
        throw AmbientMismatch("set is not a set of elements of this set space");
    }
    std::vector<PointSet> out;
    for (auto k : set.members()) {
        out.push_back(elements_[k]);
    }
    return out;
}

SetSpace build_set_space(SpacePtr base, std::vector<PointSet> family, Parallelism par) {
    if (family.empty()) {
        throw DomainError("set space needs a nonempty family");
    }
    SetSpace out;
    out.base_ = std::move(base);
    for (auto& s : family) {
        if (s.space_ptr() != out.base_) {
            throw AmbientMismatch("family member does not live in the base space");
        }
        if (std::find(out.elements_.begin(), out.elements_.end(), s) != out.elements_.end()) {
            out.warnings_.push_back("duplicate element " + describe(s) + " collapsed");
            continue;
        }
        out.elements_.push_back(std::move(s));
    }

    const std::size_t n = out.elements_.size();
    std::vector<double> matrix(n * n, 0.0);
    auto fill_rows = [&](std::size_t lo, std::size_t step) {
        for (std::size_t i = lo; i < n; i += step) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double h = hausdorff(out.elements_[i], out.elements_[j]).value();
                matrix[i * n + j] = h;
                matrix[j * n + i] = h;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(par.threads, static_cast<unsigned>(n)));
    if (workers == 1) {
        fill_rows(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(fill_rows, w, workers);
        }
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& s : out.elements_) {
        ids.push_back(describe(s));
    }
    // H is a metric on distinct nonempty finite sets; no need to re-validate.
    SpaceOptions options;
    options.validate = false;
    options.max_points = std::max(options.max_points, n);
    out.space_ = FiniteMetricSpace::from_matrix(std::move(ids), std::move(matrix), options);
    return out;
}

SingletonEmbedding singleton_embedding(const SpacePtr& space) {
    std::vector<PointSet> family;
    family.reserve(space->size());
    for (PointIndex x = 0; x < space->size(); ++x) {
        family.push_back(PointSet::singleton(space, x));
    }
    SetSpace singletons = build_set_space(space, std::move(family));
    std::vector<PointIndex> table(space->size());
    std::iota(table.begin(), table.end(), PointIndex{0});
    PointMap embedding(space, singletons.space(), std::move(table));
    return {std::move(singletons), std::move(embedding)};
}

std::vector<PointSet> default_family(const SpacePtr& space, Rng& rng, std::size_t random_size) {
    if (space->size() <= kExhaustiveLimit) {
        return all_subsets(space);
    }
    return random_family(rng, space, random_size);
}

std::size_t check_lift_preservation(const PointMap& map, std::span<const PointSet> family,
                                    LiftBound bound, SuiteReport& report, double tol) {
    const MapConstants c = map_constants(map);
    std::vector<PointSet> images;
    images.reserve(family.size());
    for (const auto& s : family) {
        images.push_back(lift_set(map, s));
    }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const double h = hausdorff(family[i], family[j]).value();
            if (h == 0.0) {
                continue;
            }
            ++pairs;
            const double lifted = hausdorff(images[i], images[j]).value();
            const bool ok = bound == LiftBound::lipschitz ? lifted <= c.lipschitz_sup * h + tol
                                                          : lifted >= c.expansive_inf * h - tol;
            if (!ok) {
                report.add(bound == LiftBound::lipschitz ? "lift-lipschitz" : "lift-expansive",
                           {{"A", family[i]}, {"B", family[j]}, {"H", h}, {"lifted_H", lifted},
                            {"lipschitz_sup", c.lipschitz_sup}, {"expansive_inf", c.expansive_inf},
                            {"table", std::vector<PointIndex>(map.table().begin(), map.table().end())}});
            }
        }
    }
    return pairs;
}

SuiteReport lift_suite(LiftBound bound, std::uint64_t seed, std::size_t maps) {
    const std::string name = bound == LiftBound::lipschitz ? "lift-lipschitz" : "lift-expansive";
    return run_suite(name, [&](SuiteReport& report) {
        const Rng root(seed);
        std::size_t injective_maps = 0;
        double sup_gap = 0.0;  // min over maps of lipschitz_sup(T) - sup lifted ratio
        double inf_gap = 0.0;  // min over maps of inf lifted ratio - expansive_inf(T)
        bool first = true;
        for (std::size_t k = 0; k < maps; ++k) {
            Rng rng = root.split(k);
            const bool large = k % 4 == 3;
            const std::size_t n = large ? static_cast<std::size_t>(rng.between(7, 12))
                                        : static_cast<std::size_t>(rng.between(2, 6));
            const bool injective = k % 2 == 0;
            const std::size_t m = injective ? n + rng.below(3) : 1 + rng.below(6);
            const SpacePtr domain = k % 3 == 0 ? random_integer_metric(rng, n) : random_euclidean_space(rng, n);
            const SpacePtr codomain = k % 3 == 1 ? random_integer_metric(rng, m) : random_euclidean_space(rng, m);

            std::vector<PointIndex> table(n);
            if (injective) {
                std::vector<PointIndex> pool(m);
                std::iota(pool.begin(), pool.end(), PointIndex{0});
                for (std::size_t i = 0; i < n; ++i) {
                    const auto pick = i + rng.below(m - i);
                    std::swap(pool[i], pool[pick]);
                    table[i] = pool[i];
                }
                ++injective_maps;
            } else {
                for (auto& t : table) t = rng.below(m);
            }
            const PointMap map(domain, codomain, std::move(table));
            const auto family = large ? random_family(rng, domain, 40) : all_subsets(domain);
            report.cases += check_lift_preservation(map, family, bound, report);

            const MapConstants point = map_constants(map);
            const MapConstants lifted = lifted_constants(map, family);
            const double s = point.lipschitz_sup - lifted.lipschitz_sup;
            const double i = lifted.expansive_inf - point.expansive_inf;
            sup_gap = first ? s : std::min(sup_gap, s);
            inf_gap = first ? i : std::min(inf_gap, i);
            first = false;
            if (bound == LiftBound::lipschitz && s < -1e-12) {
                report.add("lifted-sup-exceeds-point-sup", {{"map", k}, {"point", point.lipschitz_sup}, {"lifted", lifted.lipschitz_sup}});
            }
            if (bound == LiftBound::expansive && i < -1e-12) {
                report.add("lifted-inf-below-point-inf", {{"map", k}, {"point", point.expansive_inf}, {"lifted", lifted.expansive_inf}});
            }
        }
        report.stats["maps"] = maps;
        report.stats["injective_maps"] = injective_maps;
        report.stats["min_point_sup_minus_lifted_sup"] = sup_gap;
        report.stats["min_lifted_inf_minus_point_inf"] = inf_gap;
    });
}

void check_singleton_isometry(const SpacePtr& space, Rng& rng, SuiteReport& report) {
    const auto [singletons, embedding] = singleton_embedding(space);
    double level1 = report.stats.value("max_discrepancy_points", 0.0);
    double level2 = report.stats.value("max_discrepancy_sets", 0.0);

    for (PointIndex x = 0; x < space->size(); ++x) {
        for (PointIndex y = 0; y < space->size(); ++y) {
            ++report.cases;
            const double lifted = singletons.space()->distance(embedding(x), embedding(y));
            const double gap = std::abs(lifted - space->distance(x, y));
            level1 = std::max(level1, gap);
            if (gap != 0.0) {
                report.add("singleton-isometry-points",
                           {{"x", space->id(x)}, {"y", space->id(y)}, {"d", space->distance(x, y)}, {"H", lifted}});
            }
        }
    }

    const auto family = default_family(space, rng);
    std::vector<PointSet> images;
    for (const auto& s : family) {
        images.push_back(lift_set(embedding, s));
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            ++report.cases;
            const double h = hausdorff(family[i], family[j]).value();
            const double lifted = hausdorff(images[i], images[j]).value();
            const double gap = std::abs(lifted - h);
            level2 = std::max(level2, gap);
            if (gap != 0.0) {
                report.add("singleton-isometry-sets",
                           {{"A", family[i]}, {"B", family[j]}, {"H", h}, {"lifted_H", lifted}});
            }
        }
    }
    report.stats["max_discrepancy_points"] = level1;
    report.stats["max_discrepancy_sets"] = level2;
}

SuiteReport singleton_isometry_suite(const SpacePtr& space, std::uint64_t seed) {
    return run_suite("singleton-isometry", [&](SuiteReport& report) {
        Rng rng(seed);
        check_singleton_isometry(space, rng, report);
    });
}

SuiteReport singleton_isometry_suite(std::uint64_t seed, std::size_t spaces) {
    return run_suite("singleton-isometry", [&](SuiteReport& report) {
        const Rng root(seed);
        std::size_t second_level = 0;
        for (std::size_t s = 0; s < spaces; ++s) {
            Rng rng = root.split(s);
            const std::size_t n = 1 + s % kExhaustiveLimit;
            const SpacePtr space = s % 2 == 0 ? random_integer_metric(rng, n) : random_euclidean_space(rng, n);
            check_singleton_isometry(space, rng, report);
            if (n <= 3) {
                // one level up: the hyperspace of all subsets as the base space
                const SetSpace hyper = build_set_space(space, all_subsets(space));
                check_singleton_isometry(hyper.space(), rng, report);
                ++second_level;
            }
        }
        report.stats["spaces"] = spaces;
        report.stats["hyperspace_levels_checked"] = second_level;
    });
}

}  // namespace hauslab
