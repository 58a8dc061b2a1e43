#include "hauslab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hauslab/error.hpp"
#include "hauslab/json_support.hpp"
#include "hauslab/random_spaces.hpp"

namespace hauslab {

NestedFamily::NestedFamily(SpacePtr space, Generator generator, std::string label,
                           nlohmann::json params, std::optional<std::size_t> max_index,
                           std::optional<PointSet> limit)
    : space_(std::move(space)),
      generator_(std::move(generator)),
      label_(std::move(label)),
      params_(std::move(params)),
      max_index_(max_index),
      limit_(std::move(limit)) {
    if (!space_ || !generator_) {
        throw DomainError("nested family needs a space and a generator");
    }
    if (limit_ && limit_->space_ptr() != space_) {
        throw AmbientMismatch("limit set does not live in the family's space");
    }
}

NestedFamily NestedFamily::from_sets(std::vector<PointSet> sets, std::string label,
                                     std::optional<PointSet> limit) {
    if (sets.empty()) {
        throw DomainError("nested family needs at least one set");
    }
    SpacePtr space = sets.front().space_ptr();
    for (const auto& s : sets) {
        if (s.space_ptr() != space) {
            throw AmbientMismatch("family members live in different spaces");
        }
    }
    const std::size_t count = sets.size();
    auto shared = std::make_shared<const std::vector<PointSet>>(std::move(sets));
    return NestedFamily(
        std::move(space), [shared](std::size_t n) { return (*shared)[n - 1]; }, std::move(label),
        nlohmann::json{{"sets", count}}, count, std::move(limit));
}

PointSet NestedFamily::at(std::size_t n) const {
    if (n == 0) {
        throw DomainError("family indices start at 1");
    }
    if (max_index_ && n > *max_index_) {
        throw DomainError("index " + std::to_string(n) + " beyond the family's cutoff " +
                          std::to_string(*max_index_));
    }
    PointSet k = generator_(n);
    if (k.space_ptr() != space_) {
        throw AmbientMismatch("generator returned a set outside the family's space");
    }
    return k;
}

std::vector<PointSet> NestedFamily::prefix(std::size_t horizon) const {
    std::vector<PointSet> out;
    out.reserve(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) {
        out.push_back(at(n));
    }
    validate_nesting(out);
    return out;
}

void validate_nesting(std::span<const PointSet> sets) {
    for (std::size_t k = 1; k < sets.size(); ++k) {
        if (!sets[k].is_subset_of(sets[k - 1])) {
            throw NestingError(k, "K_" + std::to_string(k + 1) + " is not a subset of K_" +
                                      std::to_string(k));
        }
    }
}

GapSeries gap_series(std::span<const PointSet> sets, GapOptions options) {
    if (sets.size() < 2) {
        throw DomainError("gap series needs a horizon of at least 2");
    }
    validate_nesting(sets);
    GapSeries out;
    out.horizon = sets.size();
    double sum = 0.0;
    for (std::size_t n = 0; n + 1 < sets.size(); ++n) {
        // K_{n+1} ⊆ K_n, so the reverse directed distance is zero.
        const double gap = directed_hausdorff(sets[n], sets[n + 1], options.par).value();
        out.gaps.push_back(gap);
        sum += gap;
        out.partial_sums.push_back(sum);
    }
    if (options.diameters) {
        for (const auto& k : sets) {
            out.diameters.push_back(diameter(k, options.par));
        }
    }
    return out;
}

GapSeries gap_series(const NestedFamily& family, std::size_t horizon, GapOptions options) {
    if (horizon < 2) {
        throw DomainError("gap series needs a horizon of at least 2");
    }
    const auto sets = family.prefix(horizon);
    return gap_series(sets, options);
}

double Chain::step_sum() const {
    return std::accumulate(steps.begin(), steps.end(), 0.0);
}

Chain chain_select(std::span<const PointSet> sets, std::span<const double> gaps, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError("chain epsilon must lie in (0, 1)");
    }
    if (gaps.size() + 1 != sets.size()) {
        throw DomainError("chain needs one gap per consecutive pair");
    }
    Chain chain;
    chain.eps = eps;
    chain.points.push_back(sets.front().members().front());
    double eps_power = 1.0;
    for (std::size_t n = 0; n + 1 < sets.size(); ++n) {
        eps_power *= eps;
        const PointIndex from = chain.points.back();
        const PointIndex next = nearest_point(from, sets[n + 1]);
        const double step = sets[n].space().distance(from, next);
        chain.points.push_back(next);
        chain.steps.push_back(step);
        chain.gap_bounds.push_back(gaps[n]);
        chain.proof_bounds.push_back(gaps[n] + eps_power);
        if (step > gaps[n]) {
            throw std::logic_error("chain step " + std::to_string(n + 1) + " exceeds H_n");
        }
    }
    return chain;
}

Chain chain_select(const NestedFamily& family, std::size_t horizon, double eps, Parallelism par) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError("chain epsilon must lie in (0, 1)");
    }
    const auto sets = family.prefix(horizon);
    const auto series = gap_series(sets, {false, par});
    return chain_select(sets, series.gaps, eps);
}

double halving_schedule(std::size_t n) {
    return std::ldexp(1.0, -static_cast<int>(n));
}

Extraction extract_abs_convergent_subsequence(const FiniteMetricSpace& space,
                                              std::span<const PointIndex> sequence,
                                              const Modulus& modulus, const Schedule& schedule) {
    const std::size_t len = sequence.size();
    if (len == 0) {
        throw DomainError("cannot extract from an empty sequence");
    }
    // suffix_diam[j] = max d(x_m, x_k) over m, k >= j (0-based)
    std::vector<double> suffix_diam(len + 1, 0.0);
    for (std::size_t j = len; j-- > 0;) {
        double row = 0.0;
        for (std::size_t k = j + 1; k < len; ++k) {
            row = std::max(row, space.distance(sequence[j], sequence[k]));
        }
        suffix_diam[j] = std::max(suffix_diam[j + 1], row);
    }

    Extraction out;
    double previous_p = std::numeric_limits<double>::infinity();
    std::size_t previous_pos = 0;
    for (std::size_t n = 1;; ++n) {
        const double p = schedule(n);
        if (!(p > 0.0) || !(p < previous_p)) {
            throw DomainError("schedule must be positive and strictly decreasing");
        }
        std::size_t pos = std::max<std::size_t>(modulus(p), previous_pos + 1);
        pos = std::max<std::size_t>(pos, 1);
        if (pos > len) {
            out.truncated = true;
            break;
        }
        if (suffix_diam[pos - 1] >= p) {
            ++out.modulus_violations;
        }
        if (!out.positions.empty()) {
            out.step_sum += space.distance(sequence[previous_pos - 1], sequence[pos - 1]);
            out.schedule_sum += out.schedule.back();
        }
        out.positions.push_back(pos);
        out.subsequence.push_back(sequence[pos - 1]);
        out.schedule.push_back(p);
        previous_pos = pos;
        previous_p = p;
    }
    return out;
}

PrefixVerdict is_absolutely_convergent_prefix(const FiniteMetricSpace& space,
                                              std::span<const PointIndex> sequence, double budget) {
    if (sequence.size() < 2) {
        throw DomainError("prefix needs at least two terms");
    }
    PrefixVerdict v;
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
        v.sum += space.distance(sequence[i], sequence[i + 1]);
    }
    v.within_budget = v.sum <= budget;
    return v;
}

std::vector<std::pair<double, double>> cauchy_tail_estimates(const FiniteMetricSpace& space,
                                                             std::span<const PointIndex> sequence) {
    const std::size_t len = sequence.size();
    std::vector<std::pair<double, double>> out(len, {0.0, 0.0});
    double tail = 0.0;
    double diam = 0.0;
    for (std::size_t j = len; j-- > 0;) {
        if (j + 1 < len) {
            tail += space.distance(sequence[j], sequence[j + 1]);
        }
        for (std::size_t k = j + 1; k < len; ++k) {
            diam = std::max(diam, space.distance(sequence[j], sequence[k]));
        }
        out[j] = {tail, diam};
    }
    return out;
}

PointSet truncated_intersection(const NestedFamily& family, std::size_t horizon) {
    if (horizon < 1) {
        throw DomainError("horizon must be at least 1");
    }
    const auto sets = family.prefix(horizon);
    PointSet acc = sets.front();
    for (const auto& k : sets) {
        auto next = set_intersection(acc, k);
        if (!next) {
            throw std::logic_error("nested nonempty sets with empty intersection");
        }
        acc = std::move(*next);
    }
    if (!(acc == sets.back())) {
        throw std::logic_error("intersection of a nested family differs from its last set");
    }
    return acc;
}

std::vector<double> convergence_to_intersection(const NestedFamily& family, std::size_t horizon,
                                                const PointSet& limit) {
    const auto sets = family.prefix(horizon);
    std::vector<double> out;
    for (std::size_t n = 0; n < sets.size(); ++n) {
        if (!limit.is_subset_of(sets[n])) {
            throw DomainError("limit set is not contained in K_" + std::to_string(n + 1));
        }
        out.push_back(hausdorff(sets[n], limit).value());
    }
    return out;
}

std::string_view to_string(SummabilityVerdict v) {
    switch (v) {
        case SummabilityVerdict::summable_looking: return "summable-looking";
        case SummabilityVerdict::diverging_looking: return "diverging-looking";
        case SummabilityVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

bool nonincreasing(const std::vector<double>& v) {
    return std::is_sorted(v.rbegin(), v.rend());
}

void summability(ClassificationReport& r, double tol) {
    const auto& gaps = r.series.gaps;
    const std::size_t first = gaps.size() / 2;  // second half of the gaps
    std::vector<double> xs, ys;
    bool all_small = true;
    for (std::size_t k = first; k < gaps.size(); ++k) {
        if (gaps[k] > tol) {
            all_small = false;
            xs.push_back(std::log(static_cast<double>(k + 1)));
            ys.push_back(std::log(gaps[k]));
        }
    }
    if (all_small) {
        r.verdict = SummabilityVerdict::summable_looking;
        r.verdict_basis = "tail gaps vanish within tolerance";
        return;
    }
    if (xs.size() < 3) {
        r.verdict = SummabilityVerdict::inconclusive;
        r.verdict_basis = "too few tail gaps above tolerance to fit";
        return;
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    r.tail_slope = slope;
    if (slope >= -0.1) {
        r.verdict = SummabilityVerdict::diverging_looking;
        r.verdict_basis = "tail gaps level off at a constant floor";
    } else if (slope >= -1.0) {
        r.verdict = SummabilityVerdict::diverging_looking;
        r.verdict_basis = "tail gaps decay no faster than c/n";
    } else if (slope <= -1.1) {
        r.verdict = SummabilityVerdict::summable_looking;
        r.verdict_basis = "tail gaps decay at least like c/n^1.1";
    } else {
        r.verdict = SummabilityVerdict::inconclusive;
        r.verdict_basis = "tail slope between -1.1 and -1";
    }
}

}  // namespace

ClassificationReport classify(const NestedFamily& family, std::size_t horizon, double tol,
                              Parallelism par, double eps) {
    if (horizon < 4) {
        throw DomainError("classification needs a horizon of at least 4");
    }
    const auto sets = family.prefix(horizon);
    const PointSet intersection = truncated_intersection(family, horizon);
    ClassificationReport r{.label = family.label(),
                           .horizon = horizon,
                           .series = gap_series(sets, {true, par}),
                           .diameters_nonincreasing = true,
                           .gaps_nonincreasing = true,
                           .partial_sum = 0.0,
                           .tail_slope = std::nullopt,
                           .verdict = SummabilityVerdict::inconclusive,
                           .verdict_basis = {},
                           .truncated_intersection = intersection,
                           .convergence_to_intersection = 0.0,
                           .chain = {},
                           .chain_settled = false,
                           .limit_distances = {}};
    r.diameters_nonincreasing = nonincreasing(r.series.diameters);
    r.gaps_nonincreasing = nonincreasing(r.series.gaps);
    r.partial_sum = r.series.partial_sums.back();
    summability(r, tol);
    r.convergence_to_intersection = hausdorff(sets.back(), intersection, par).value();
    r.chain = chain_select(sets, r.series.gaps, eps);
    r.chain_settled = r.chain.steps.back() <= tol;
    if (family.limit()) {
        for (const auto& k : sets) {
            r.limit_distances.push_back(hausdorff(k, *family.limit(), par).value());
        }
    }
    return r;
}

nlohmann::json ClassificationReport::to_json() const {
    nlohmann::json j;
    j["label"] = label;
    j["horizon"] = horizon;
    j["gaps"] = series.gaps;
    j["partial_sums"] = series.partial_sums;
    j["diameters"] = series.diameters;
    j["diameter_at_horizon"] = series.diameters.empty() ? 0.0 : series.diameters.back();
    j["diameters_nonincreasing"] = diameters_nonincreasing;
    j["gap_at_horizon"] = series.gaps.back();
    j["gaps_nonincreasing"] = gaps_nonincreasing;
    j["partial_sum"] = partial_sum;
    j["summability"] = {{"verdict", std::string(to_string(verdict))},
                        {"basis", verdict_basis},
                        {"heuristic", true},
                        {"tail_slope", tail_slope ? nlohmann::json(*tail_slope) : nlohmann::json(nullptr)}};
    j["truncated_intersection"] = {{"nonempty_at_truncation", true},
                                   {"size", truncated_intersection.size()},
                                   {"note", "finite nested nonempty sets always intersect; this says nothing about the infinite intersection"}};
    j["convergence_to_intersection"] = convergence_to_intersection;
    const auto& space = truncated_intersection.space();
    std::vector<std::string> chain_ids;
    for (auto p : chain.points) chain_ids.push_back(space.id(p));
    j["chain"] = {{"eps", chain.eps},
                  {"points", chain_ids},
                  {"steps", chain.steps},
                  {"proof_bounds", chain.proof_bounds},
                  {"step_sum", chain.step_sum()},
                  {"settled", chain_settled}};
    if (!limit_distances.empty()) {
        j["limit_distances"] = limit_distances;
    }
    return j;
}

std::string ClassificationReport::to_csv() const {
    std::ostringstream out;
    out << "n,H_n,partial_sum,delta_n,chain_step\n";
    for (std::size_t n = 1; n <= horizon; ++n) {
        const bool has_gap = n < horizon;
        out << n << ',' << (has_gap ? format_real(series.gaps[n - 1]) : "") << ','
            << (has_gap ? format_real(series.partial_sums[n - 1]) : "") << ','
            << (series.diameters.empty() ? "" : format_real(series.diameters[n - 1])) << ','
            << (has_gap ? format_real(chain.steps[n - 1]) : "") << '\n';
    }
    return out.str();
}

NestedFamily random_nested_family(Rng& rng, const SpacePtr& space, std::size_t length) {
    std::vector<PointSet> sets;
    std::vector<PointIndex> current;
    for (PointIndex i = 0; i < space->size(); ++i) {
        if (rng.coin(0.8)) current.push_back(i);
    }
    if (current.empty()) current.push_back(rng.below(space->size()));
    for (std::size_t n = 0; n < length; ++n) {
        sets.emplace_back(space, current);
        const double share = rng.uniform(0.0, 0.5);
        std::vector<PointIndex> kept;
        for (auto x : current) {
            if (!rng.coin(share)) kept.push_back(x);
        }
        if (kept.empty()) kept.push_back(current[rng.below(current.size())]);
        current = std::move(kept);
    }
    return NestedFamily::from_sets(std::move(sets), "random-nested");
}

std::size_t check_chain_bounds(const NestedFamily& family, std::size_t horizon, double eps,
                               SuiteReport& report) {
    const auto sets = family.prefix(horizon);
    const auto series = gap_series(sets, {false, {}});
    Chain chain;
    try {
        chain = chain_select(sets, series.gaps, eps);
    } catch (const std::logic_error& e) {
        report.add("chain-step-exceeds-gap", {{"family", family.label()}, {"error", e.what()}});
        return 0;
    }
    for (std::size_t n = 0; n < chain.steps.size(); ++n) {
        if (!(chain.steps[n] <= chain.gap_bounds[n])) {
            report.add("chain-step-exceeds-gap",
                       {{"family", family.label()}, {"n", n + 1}, {"step", chain.steps[n]}, {"H_n", chain.gap_bounds[n]}});
        }
        if (!(chain.gap_bounds[n] <= chain.proof_bounds[n])) {
            report.add("gap-exceeds-proof-bound", {{"family", family.label()}, {"n", n + 1}});
        }
    }
    return chain.steps.size();
}

SuiteReport chain_bounds_suite(std::span<const std::pair<NestedFamily, std::size_t>> families,
                               std::uint64_t seed, std::size_t random_families, double eps) {
    return run_suite("chain-bounds", [&](SuiteReport& report) {
        for (const auto& [family, horizon] : families) {
            report.cases += check_chain_bounds(family, horizon, eps, report);
        }
        const Rng root(seed);
        for (std::size_t k = 0; k < random_families; ++k) {
            Rng rng = root.split(k);
            const std::size_t n = static_cast<std::size_t>(rng.between(2, 24));
            const SpacePtr space = k % 2 == 0 ? random_integer_metric(rng, n) : random_euclidean_space(rng, n);
            const std::size_t length = static_cast<std::size_t>(rng.between(2, 12));
            report.cases += check_chain_bounds(random_nested_family(rng, space, length), length, eps, report);
        }
        report.stats["fixed_families"] = families.size();
        report.stats["random_families"] = random_families;
    });
}

}  // namespace hauslab
