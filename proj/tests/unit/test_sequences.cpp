#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hauslab/error.hpp"
#include "hauslab/gallery.hpp"
#include "hauslab/sequences.hpp"

using namespace hauslab;

namespace {

// 2520 is divisible by 1..10, so every endpoint ±1/n with n <= 10 is a grid point.
constexpr double kExactPitch = 1.0 / 2520.0;

/// {1/k : k = 1..length} ∪ {0}; point k-1 sits at 1/k, point `length` at 0.
SpacePtr reciprocal_grid(std::size_t length) {
    std::vector<double> xs;
    for (std::size_t k = 1; k <= length; ++k) xs.push_back(1.0 / static_cast<double>(k));
    xs.push_back(0.0);
    return fixtures::line(xs);
}

std::vector<PointIndex> iota(std::size_t n) {
    std::vector<PointIndex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

NestedFamily constant_family(std::size_t length) {
    auto x = fixtures::x3();
    return NestedFamily::from_sets(std::vector<PointSet>(length, PointSet(x, {0, 2})), "constant");
}

}  // namespace

TEST(GapSeries, ShrinkingIntervalsExactEndpoints) {
    const auto family = gallery::shrinking_intervals(kExactPitch, 10);
    const auto series = gap_series(family, 10);
    ASSERT_EQ(series.gaps.size(), 9u);
    for (std::size_t n = 1; n < 10; ++n) {
        const double nd = static_cast<double>(n);
        EXPECT_NEAR(series.gaps[n - 1], 1.0 / nd - 1.0 / (nd + 1.0), 1e-12) << "n=" << n;
        EXPECT_NEAR(series.diameters[n - 1], 2.0 / nd, 1e-12);
    }
    EXPECT_NEAR(series.partial_sums.back(), 1.0 - 1.0 / 10.0, 1e-12);
}

TEST(GapSeries, LpBasisIsConstant) {
    const auto series = gap_series(gallery::lp_basis(2.0, 17, 16), 16);
    for (double g : series.gaps) EXPECT_NEAR(g, std::sqrt(2.0), 1e-12);
}

TEST(GapSeries, ConstantFamilyHasZeroGaps) {
    const auto series = gap_series(constant_family(6), 6);
    for (double g : series.gaps) EXPECT_EQ(g, 0.0);
}

TEST(Nesting, ErrorNamesTheFirstBadIndex) {
    auto x = fixtures::line({0, 1, 2, 3});
    std::vector<PointSet> sets{PointSet(x, {0, 1, 2, 3}), PointSet(x, {0, 1, 2}), PointSet(x, {1, 2, 3}),
                               PointSet(x, {1})};
    try {
        validate_nesting(sets);
        FAIL() << "expected a nesting error";
    } catch (const NestingError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    const auto family = NestedFamily::from_sets(sets, "broken");
    EXPECT_THROW(family.prefix(4), NestingError);
    EXPECT_NO_THROW(family.prefix(2));
}

TEST(Chain, ShrinkingIntervalsHeadsToZero) {
    const auto family = gallery::shrinking_intervals(1e-2, 100);
    const auto chain = chain_select(family, 100);
    const auto series = gap_series(family, 100, {false, {}});
    double step_sum = 0.0;
    for (std::size_t n = 0; n < chain.steps.size(); ++n) {
        EXPECT_LE(chain.steps[n], series.gaps[n]);
        EXPECT_LE(series.gaps[n], chain.proof_bounds[n]);
        step_sum += chain.steps[n];
    }
    EXPECT_LE(step_sum, series.partial_sums.back());
    EXPECT_DOUBLE_EQ(chain.step_sum(), step_sum);
    EXPECT_LE(std::abs(family.space()->coordinates(chain.terminal())[0]), 1e-2 + 1e-12);
}

TEST(Chain, ConstantFamilyStaysPut) {
    const auto chain = chain_select(constant_family(5), 5);
    for (double s : chain.steps) EXPECT_EQ(s, 0.0);
    for (auto p : chain.points) EXPECT_EQ(p, chain.points.front());
}

TEST(Chain, LpBasisNeverSettles) {
    const auto chain = chain_select(gallery::lp_basis(2.0, 17, 16), 16);
    for (double s : chain.steps) EXPECT_NEAR(s, std::sqrt(2.0), 1e-12);
}

TEST(Chain, EpsMustLieInTheOpenUnitInterval) {
    const auto family = constant_family(4);
    EXPECT_THROW(chain_select(family, 4, 0.0), DomainError);
    EXPECT_THROW(chain_select(family, 4, 1.0), DomainError);
    const auto chain = chain_select(family, 4, 0.25);
    EXPECT_DOUBLE_EQ(chain.proof_bounds[1], 0.0625);
}

TEST(Extraction, EventuallyConstantSequence) {
    auto x = fixtures::line({0, 1, 2});
    const std::vector<PointIndex> seq{2, 1, 0, 0, 0, 0, 0, 0, 0, 0};
    const auto ext = extract_abs_convergent_subsequence(*x, seq, [](double) { return std::size_t{3}; });
    ASSERT_FALSE(ext.subsequence.empty());
    for (auto p : ext.subsequence) EXPECT_EQ(p, 0u);
    EXPECT_EQ(ext.step_sum, 0.0);
}

TEST(Extraction, ReciprocalGridWithItsModulus) {
    const std::size_t length = 4000;
    auto x = reciprocal_grid(length);
    const auto seq = iota(length);
    const Modulus modulus = [](double eps) { return static_cast<std::size_t>(std::ceil(2.0 / eps)); };
    const auto ext = extract_abs_convergent_subsequence(*x, seq, modulus);
    EXPECT_GE(ext.positions.size(), 5u);
    EXPECT_LE(ext.step_sum, 1.0);
    EXPECT_LE(ext.step_sum, ext.schedule_sum);
    EXPECT_EQ(ext.modulus_violations, 0u);
    EXPECT_TRUE(ext.truncated);
    for (std::size_t i = 1; i < ext.positions.size(); ++i) EXPECT_LT(ext.positions[i - 1], ext.positions[i]);
}

TEST(Extraction, RejectsNonDecreasingSchedules) {
    auto x = fixtures::line({0, 1});
    const std::vector<PointIndex> seq{0, 1, 0, 1};
    const Modulus m = [](double) { return std::size_t{1}; };
    EXPECT_THROW(extract_abs_convergent_subsequence(*x, seq, m, [](std::size_t) { return 0.5; }), DomainError);
    EXPECT_THROW(extract_abs_convergent_subsequence(*x, seq, m, [](std::size_t n) { return -1.0 / n; }),
                 DomainError);
}

TEST(Extraction, BadModulusIsCounted) {
    auto x = fixtures::line({0, 1});
    std::vector<PointIndex> seq;
    for (int i = 0; i < 64; ++i) seq.push_back(i % 2);
    const auto ext = extract_abs_convergent_subsequence(*x, seq, [](double) { return std::size_t{1}; });
    EXPECT_GT(ext.modulus_violations, 0u);
}

TEST(AbsolutePrefix, TelescopingAndAlternating) {
    auto x = fixtures::line({0, 1});
    EXPECT_EQ(is_absolutely_convergent_prefix(*x, std::vector<PointIndex>(10, 0), 0.0).sum, 0.0);

    auto grid = reciprocal_grid(100);
    const auto v = is_absolutely_convergent_prefix(*grid, iota(100), 1.0);
    EXPECT_NEAR(v.sum, 1.0 - 1.0 / 100.0, 1e-12);
    EXPECT_TRUE(v.within_budget);

    std::vector<PointIndex> alt;
    for (int i = 0; i < 100; ++i) alt.push_back(i % 2);
    const auto a = is_absolutely_convergent_prefix(*x, alt, 10.0);
    EXPECT_EQ(a.sum, 99.0);
    EXPECT_FALSE(a.within_budget);
}

TEST(CauchyTails, StepSumsDominateTailDiameters) {
    auto grid = reciprocal_grid(50);
    for (const auto& [sum, diam] : cauchy_tail_estimates(*grid, iota(50))) EXPECT_LE(diam, sum + 1e-15);
}

TEST(Intersection, TruncationEqualsLastSet) {
    const auto family = gallery::shrinking_intervals(1e-3, 16);
    const auto k10 = truncated_intersection(family, 10);
    EXPECT_EQ(k10, family.at(10));
    EXPECT_TRUE(k10.contains(*family.space()->find("0")));

    const auto lp = gallery::lp_basis(2.0, 17, 16);
    EXPECT_EQ(truncated_intersection(lp, 10).size(), 8u);
    const auto lens = gallery::parabolic_regions(1e-2, 5);
    EXPECT_EQ(truncated_intersection(lens, 5), lens.at(5));
}

TEST(Intersection, ConvergenceToTheLimit) {
    const double pitch = 1e-2;
    const auto family = gallery::shrinking_intervals(pitch, 16);
    const auto d = convergence_to_intersection(family, 16, *family.limit());
    for (std::size_t n = 1; n <= 16; ++n) EXPECT_NEAR(d[n - 1], 1.0 / n, pitch) << "n=" << n;

    const auto constant = constant_family(4);
    for (double v : convergence_to_intersection(constant, 4, constant.at(1))) EXPECT_EQ(v, 0.0);

    const auto one = PointSet::singleton(family.space(), *family.space()->find("1"));
    EXPECT_THROW(convergence_to_intersection(family, 4, one), DomainError);
}

TEST(Intersection, SingletonDistancesConverge) {
    const auto family = gallery::shrinking_intervals(kExactPitch, 10);
    const auto one = PointSet::singleton(family.space(), *family.space()->find("1"));
    for (std::size_t n = 1; n <= 10; ++n) {
        EXPECT_NEAR(hausdorff(one, family.at(n)).value(), 1.0 + 1.0 / n, 1e-12);
    }
}

TEST(Classify, GalleryVerdicts) {
    const auto shrinking = gallery::shrinking_intervals(1e-3, 32);
    const auto s = classify(shrinking, 32, 2e-3);
    EXPECT_EQ(s.verdict, SummabilityVerdict::summable_looking) << s.verdict_basis;
    EXPECT_TRUE(s.diameters_nonincreasing);
    EXPECT_LE(s.convergence_to_intersection, 1e-12);

    const auto lp = classify(gallery::lp_basis(2.0, 17, 16), 16, 1e-12);
    EXPECT_EQ(lp.verdict, SummabilityVerdict::diverging_looking) << lp.verdict_basis;
    EXPECT_FALSE(lp.chain_settled);
    for (double d : lp.series.diameters) EXPECT_NEAR(d, std::sqrt(2.0), 1e-12);

    const auto power = classify(gallery::power_functions(1e-3, 200, 16), 16, 1e-12);
    EXPECT_EQ(power.verdict, SummabilityVerdict::diverging_looking) << power.verdict_basis;

    EXPECT_THROW(classify(gallery::lp_basis(2.0, 17, 16), 3, 1e-12), DomainError);
}

TEST(Classify, CsvLayout) {
    const auto r = classify(gallery::lp_basis(1.0, 9, 8), 8, 1e-12);
    const auto csv = r.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,H_n,partial_sum,delta_n,chain_step");
    EXPECT_NE(csv.find("\n1,2,2,2,2\n"), std::string::npos) << csv;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
    EXPECT_EQ(r.to_json()["summability"]["verdict"], "diverging-looking");
}

TEST(RandomFamilies, AreNestedAndDeterministic) {
    auto x = fixtures::line({0, 1, 2, 3, 4, 5, 6, 7});
    Rng r1(5), r2(5);
    const auto f1 = random_nested_family(r1, x, 8);
    const auto f2 = random_nested_family(r2, x, 8);
    EXPECT_NO_THROW(f1.prefix(8));
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(f1.at(n), f2.at(n));
}
