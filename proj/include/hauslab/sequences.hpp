#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hauslab/hausdorff.hpp"
#include "hauslab/random.hpp"
#include "hauslab/suite.hpp"

namespace hauslab {

/**
 * A decreasing sequence K_1 ⊇ K_2 ⊇ ... of point sets over one ambient
 * space, produced on demand by a generator that must be pure in n.
 *
 * `limit()` is the intended limit set when the family's source knows it
 * analytically (for example {0} for shrinking intervals); it is data for
 * convergence checks, not something computed from the sequence.
 */
class NestedFamily {
public:
    using Generator = std::function<PointSet(std::size_t)>;

    NestedFamily(SpacePtr space, Generator generator, std::string label,
                 nlohmann::json params = nlohmann::json::object(),
                 std::optional<std::size_t> max_index = std::nullopt,
                 std::optional<PointSet> limit = std::nullopt);

    /// Finite family K_1..K_m from explicit sets (m = sets.size()).
    static NestedFamily from_sets(std::vector<PointSet> sets, std::string label,
                                  std::optional<PointSet> limit = std::nullopt);

    /// K_n, 1-based.
    PointSet at(std::size_t n) const;

    /// K_1..K_horizon with nesting validated (NestingError on failure).
    std::vector<PointSet> prefix(std::size_t horizon) const;

    const SpacePtr& space() const noexcept { return space_; }
    const std::string& label() const noexcept { return label_; }
    const nlohmann::json& params() const noexcept { return params_; }
    std::optional<std::size_t> max_index() const noexcept { return max_index_; }
    const std::optional<PointSet>& limit() const noexcept { return limit_; }

private:
    SpacePtr space_;
    Generator generator_;
    std::string label_;
    nlohmann::json params_;
    std::optional<std::size_t> max_index_;
    std::optional<PointSet> limit_;
};

/// Throws NestingError naming the first n with K_{n+1} not inside K_n.
void validate_nesting(std::span<const PointSet> sets);

struct GapSeries {
    std::size_t horizon = 0;
    std::vector<double> gaps;          ///< gaps[n-1] = H(K_n, K_{n+1}), n < horizon
    std::vector<double> partial_sums;  ///< partial_sums[n-1] = sum of gaps[0..n-1]
    std::vector<double> diameters;     ///< diameters[n-1] = δ(K_n); empty if not requested
};

struct GapOptions {
    bool diameters = true;
    Parallelism par{};
};

GapSeries gap_series(const NestedFamily& family, std::size_t horizon, GapOptions options = {});
GapSeries gap_series(std::span<const PointSet> sets, GapOptions options = {});

/// Points a_1..a_N with a_n in K_n: a_1 the lowest-index point of K_1, then
/// a_{n+1} the nearest point of K_{n+1} to a_n (ties to the lowest index).
struct Chain {
    double eps = 0.5;
    std::vector<PointIndex> points;
    std::vector<double> steps;         ///< d(a_n, a_{n+1})
    std::vector<double> gap_bounds;    ///< H_n
    std::vector<double> proof_bounds;  ///< H_n + eps^n
    PointIndex terminal() const { return points.back(); }
    double step_sum() const;
};

/// eps must lie in (0, 1). Throws std::logic_error if a step exceeds H_n.
Chain chain_select(const NestedFamily& family, std::size_t horizon, double eps = 0.5,
                   Parallelism par = {});
Chain chain_select(std::span<const PointSet> sets, std::span<const double> gaps, double eps = 0.5);

/// Picks of the subsequence extraction. Positions are 1-based indices into the sequence.
struct Extraction {
    std::vector<std::size_t> positions;
    std::vector<PointIndex> subsequence;
    std::vector<double> schedule;  ///< p_n used for each pick
    double step_sum = 0.0;         ///< sum of d(x_{N_n}, x_{N_{n+1}})
    double schedule_sum = 0.0;     ///< sum of p_n over the steps taken
    bool truncated = false;        ///< the modulus ran past the prefix
    std::size_t modulus_violations = 0;  ///< picks where some d(x_m,x_k) >= p_n, m,k >= N_n
};

using Modulus = std::function<std::size_t(double)>;
using Schedule = std::function<double(std::size_t)>;

/// p_n = 2^{-n}.
double halving_schedule(std::size_t n);

/// N_n = modulus(p_n), bumped to stay strictly increasing. The schedule must
/// be positive and strictly decreasing (DomainError otherwise).
Extraction extract_abs_convergent_subsequence(const FiniteMetricSpace& space,
                                              std::span<const PointIndex> sequence,
                                              const Modulus& modulus,
                                              const Schedule& schedule = halving_schedule);

struct PrefixVerdict {
    double sum = 0.0;  ///< sum of consecutive steps
    bool within_budget = true;
};

PrefixVerdict is_absolutely_convergent_prefix(const FiniteMetricSpace& space,
                                              std::span<const PointIndex> sequence, double budget);

/// For each j: (sum of steps from j on, max d(x_m, x_k) over m, k >= j).
/// The second never exceeds the first.
std::vector<std::pair<double, double>> cauchy_tail_estimates(const FiniteMetricSpace& space,
                                                             std::span<const PointIndex> sequence);

/// Literal intersection of K_1..K_N; equals K_N for a nested family.
PointSet truncated_intersection(const NestedFamily& family, std::size_t horizon);

/// H(K_n, limit) for n = 1..horizon. The limit must lie inside every K_n.
std::vector<double> convergence_to_intersection(const NestedFamily& family, std::size_t horizon,
                                                const PointSet& limit);

enum class SummabilityVerdict { summable_looking, diverging_looking, inconclusive };
std::string_view to_string(SummabilityVerdict v);

struct ClassificationReport {
    std::string label;
    std::size_t horizon = 0;
    GapSeries series;
    bool diameters_nonincreasing = true;
    bool gaps_nonincreasing = true;
    double partial_sum = 0.0;
    std::optional<double> tail_slope;  ///< log-log slope of the positive tail gaps
    SummabilityVerdict verdict = SummabilityVerdict::inconclusive;
    std::string verdict_basis;
    PointSet truncated_intersection;
    double convergence_to_intersection = 0.0;  ///< H(K_N, K_1 ∩ ... ∩ K_N)
    Chain chain;
    bool chain_settled = false;                ///< last chain step <= tol
    std::vector<double> limit_distances;       ///< H(K_n, limit) when the family has one

    nlohmann::json to_json() const;
    /// One row per n: n, H_n, partial_sum, delta_n, chain_step.
    std::string to_csv() const;
};

/**
 * Summary of a family up to `horizon` (>= 4).
 *
 * The summability verdict is a heuristic on finite data: over the second
 * half of the gaps, all gaps <= tol reads as summable; otherwise the
 * log-log slope s of the gaps above tol decides: s >= -1 (constant floor
 * or c/n) diverging, s <= -1.1 (c/n^1.1 or faster) summable, else
 * inconclusive. The chain is selected with `eps`.
 */
ClassificationReport classify(const NestedFamily& family, std::size_t horizon, double tol,
                              Parallelism par = {}, double eps = 0.5);

/// K_1 = random subset of `space`, then each step deletes a random share of
/// the points (possibly none), keeping every set nonempty.
NestedFamily random_nested_family(Rng& rng, const SpacePtr& space, std::size_t length);

/// Adds a violation whenever a chain step exceeds H_n or H_n exceeds H_n + eps^n.
std::size_t check_chain_bounds(const NestedFamily& family, std::size_t horizon, double eps,
                               SuiteReport& report);

/// `check_chain_bounds` over the given families plus `random_families`
/// seeded random nested families.
SuiteReport chain_bounds_suite(std::span<const std::pair<NestedFamily, std::size_t>> families,
                               std::uint64_t seed, std::size_t random_families = 100,
                               double eps = 0.5);

}  // namespace hauslab
