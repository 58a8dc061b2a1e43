#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hauslab/hausdorff.hpp"
#include "hauslab/random.hpp"
#include "hauslab/suite.hpp"

namespace hauslab {

/// Total map between two finite spaces, stored as an index table.
class PointMap {
public:
    PointMap(SpacePtr domain, SpacePtr codomain, std::vector<PointIndex> table);

    static PointMap identity(const SpacePtr& space);
    static PointMap constant(const SpacePtr& domain, const SpacePtr& codomain, PointIndex value);

    const SpacePtr& domain() const noexcept { return domain_; }
    const SpacePtr& codomain() const noexcept { return codomain_; }
    std::span<const PointIndex> table() const noexcept { return table_; }
    PointIndex operator()(PointIndex x) const { return table_.at(x); }

    bool injective() const noexcept { return injective_; }
    bool surjective() const noexcept { return surjective_; }

    /// Table inversion; nullopt unless the map is a bijection.
    std::optional<PointMap> inverse() const;

private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<PointIndex> table_;
    bool injective_ = false;
    bool surjective_ = false;
};

/// Extremes of rho(Tx, Ty) / d(x, y) over pairs x != y.
struct MapConstants {
    double lipschitz_sup = 0.0;
    double expansive_inf = 0.0;
};

/// The image {Tx : x in A}, a point set of the codomain.
PointSet lift_set(const PointMap& map, const PointSet& a);

/// Exact constants over all unordered pairs. Domain needs 2..2048 points.
MapConstants map_constants(const PointMap& map);

/// Same extremes for the induced set map: ratios H(T(A), T(B)) / H(A, B) over
/// distinct pairs of the family. Needs at least two distinct sets.
MapConstants lifted_constants(const PointMap& map, std::span<const PointSet> family,
                              Parallelism par = {});

/**
 * C_b(X) at finite scale: a family of point sets over `base` viewed as a
 * metric space under the Hausdorff distance.
 *
 * The distance matrix is materialised at construction, so `space()` is an
 * ordinary FiniteMetricSpace; building a SetSpace over it gives the second
 * level C_b(C_b(X)). Element k of the family is point k of `space()`.
 */
class SetSpace {
public:
    const SpacePtr& base() const noexcept { return base_; }
    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<PointSet>& elements() const noexcept { return elements_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    std::optional<PointIndex> index_of(const PointSet& set) const;

    /// The member sets of a point set of `space()`, as a set of elements.
    std::vector<PointSet> unpack(const PointSet& set) const;

private:
    friend SetSpace build_set_space(SpacePtr base, std::vector<PointSet> family, Parallelism par);

    SpacePtr base_;
    SpacePtr space_;
    std::vector<PointSet> elements_;
    std::vector<std::string> warnings_;
};

/// Duplicate members of the family collapse (with a warning).
SetSpace build_set_space(SpacePtr base, std::vector<PointSet> family, Parallelism par = {});

/// x -> {x} together with the set space of all singletons.
struct SingletonEmbedding {
    SetSpace singletons;
    PointMap embedding;
};

/// Surjective isometry of `space` onto its singletons.
SingletonEmbedding singleton_embedding(const SpacePtr& space);

/// All nonempty subsets when the space has at most `kExhaustiveLimit`
/// points, otherwise `random_size` seeded random subsets.
std::vector<PointSet> default_family(const SpacePtr& space, Rng& rng, std::size_t random_size = 64);

enum class LiftBound { lipschitz, expansive };

/// Adds a violation for every pair with
///   lipschitz: H(TA, TB) > lipschitz_sup(T) * H(A, B) + tol
///   expansive: H(TA, TB) < expansive_inf(T) * H(A, B) - tol
/// Returns the number of pairs checked.
std::size_t check_lift_preservation(const PointMap& map, std::span<const PointSet> family,
                                    LiftBound bound, SuiteReport& report, double tol = 1e-12);

/// Random maps (half injective) between random spaces: exhaustive families on
/// spaces of at most 6 points, random families on 7..12 point spaces every fourth map.
SuiteReport lift_suite(LiftBound bound, std::uint64_t seed, std::size_t maps = 200);

/// Both isometry levels on one space: H({x},{y}) = d(x,y) and
/// H(T(A), T(B)) = H(A, B) over the default family. Records max discrepancy.
void check_singleton_isometry(const SpacePtr& space, Rng& rng, SuiteReport& report);

SuiteReport singleton_isometry_suite(const SpacePtr& space, std::uint64_t seed = 42);
SuiteReport singleton_isometry_suite(std::uint64_t seed, std::size_t spaces = 50);

}  // namespace hauslab
