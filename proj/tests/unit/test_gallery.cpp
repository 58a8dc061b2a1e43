#include <gtest/gtest.h>

#include <cmath>

#include "hauslab/error.hpp"
#include "hauslab/gallery.hpp"
#include "oracles.hpp"

using namespace hauslab;
using namespace hauslab::gallery;

TEST(PowerFunctions, GapsMatchGridMaximum) {
    const auto family = power_functions(1e-3, 200, 16);
    const auto series = gap_series(family, 11);
    EXPECT_NEAR(series.gaps[0], 0.25, 1e-12);
    EXPECT_NEAR(series.gaps[2], 27.0 / 256.0, 2e-3);
    for (std::size_t n = 1; n <= 10; ++n) {
        EXPECT_NEAR(series.gaps[n - 1], oracle::power_gap_grid(n, 1000), 1e-12) << "n=" << n;
        EXPECT_NEAR(series.gaps[n - 1], power_gap(n), 2e-3) << "n=" << n;
    }
    // δ(K_n) = max_t (t^n - t^{i_max}): below 1, and close to 1 only while n << i_max.
    for (std::size_t n = 1; n <= 11; ++n) {
        double expected = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double t = k / 1000.0;
            expected = std::max(expected, std::pow(t, n) - std::pow(t, 200));
        }
        EXPECT_NEAR(series.diameters[n - 1], expected, 1e-12) << "n=" << n;
        EXPECT_LT(series.diameters[n - 1], 1.0);
        if (n <= 4) EXPECT_GE(series.diameters[n - 1], 0.9);
    }
}

TEST(PowerFunctions, DiameterApproachesOneAsTheCutoffGrows) {
    const auto coarse = gap_series(power_functions(1e-3, 200, 10), 10).diameters;
    const auto fine = gap_series(power_functions(1e-3, 400, 10), 10).diameters;
    for (std::size_t n = 0; n < coarse.size(); ++n) EXPECT_GT(fine[n], coarse[n]);
}

TEST(PowerFunctions, ClosedFormGap) {
    for (std::size_t n = 1; n <= 20; ++n) {
        EXPECT_NEAR(power_gap(n), oracle::power_gap_grid(n, 200000), 1e-9);
    }
}

TEST(PowerFunctions, ParameterChecks) {
    EXPECT_THROW(power_functions(0.1, 200, 16), DomainError);
    EXPECT_THROW(power_functions(1e-3, 20, 16), DomainError);
    EXPECT_THROW(power_functions(3e-3 / 7.0, 200, 16), DomainError);
}

TEST(ParabolicRegions, Membership) {
    for (std::size_t n = 1; n <= 9; ++n) {
        const double nd = static_cast<double>(n);
        EXPECT_TRUE(parabolic_contains(n, 0.0, 1.0 / nd));
        EXPECT_TRUE(parabolic_contains(n, 0.0, -1.0 / nd));
        EXPECT_FALSE(parabolic_contains(n, 0.0, 1.0 / nd + 2e-2));
        EXPECT_TRUE(parabolic_contains(n, 2.0, 0.0));
        EXPECT_FALSE(parabolic_contains(n, 2.0 + 1e-2, 0.0));
    }
}

TEST(ParabolicRegions, FirstGapAndLimit) {
    const double pitch = 1e-2;
    const auto family = parabolic_regions(pitch, 4);
    EXPECT_NO_THROW(family.prefix(4));
    EXPECT_NEAR(hausdorff(family.at(1), family.at(2)).value(), 0.5, 2 * pitch);
    ASSERT_TRUE(family.limit());
    EXPECT_EQ(family.limit()->size(), 401u);
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_LE(hausdorff(family.at(n), *family.limit()).value(), 1.0 / n + 2 * pitch);
    }
}

TEST(LpBasis, GapsAndDiameters) {
    for (double p : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        const double expected = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);
        const auto series = gap_series(lp_basis(p, 17, 16), 16);
        for (double g : series.gaps) EXPECT_NEAR(g, expected, 1e-12) << "p=" << p;
        for (std::size_t n = 0; n + 1 < series.diameters.size(); ++n) EXPECT_NEAR(series.diameters[n], expected, 1e-12);
    }
    EXPECT_THROW(lp_basis(2.0, 10, 16), DomainError);
    EXPECT_THROW(lp_basis(0.5, 17, 16), DomainError);
}

TEST(ShrinkingIntervals, Basics) {
    const double pitch = 1e-3;
    const auto family = shrinking_intervals(pitch, 16);
    EXPECT_NEAR(hausdorff(family.at(1), family.at(2)).value(), 0.5, pitch);
    EXPECT_TRUE(truncated_intersection(family, 16).contains(*family.space()->find("0")));
    EXPECT_EQ(family.limit()->size(), 1u);
    EXPECT_THROW(shrinking_intervals(0.3, 4), DomainError);
}

TEST(AtsujiTails, NestedWithIntegerLimit) {
    const auto family = atsuji_tails(3, 50);
    EXPECT_EQ(family.max_index(), 51u);
    EXPECT_NO_THROW(family.prefix(51));
    EXPECT_EQ(family.at(51), *family.limit());
    EXPECT_EQ(family.limit()->ids(), (std::vector<std::string>{"1", "2", "3"}));
}

TEST(WitnessSearch, FindsBothOrders) {
    const auto report = complement_witness_search(16, 10000, 42);
    ASSERT_TRUE(report.found_both());
    EXPECT_EQ(report.greater->trial, 0u);
    EXPECT_EQ(report.greater->h_sets, 1.0);
    EXPECT_EQ(report.greater->h_complements, 3.0);
    EXPECT_LT(report.less->h_complements, report.less->h_sets);
    const auto j = report.to_json();
    EXPECT_TRUE(j["found_both"].get<bool>());

    // The reported witness replays from its own data.
    const auto& w = *report.less;
    PointSet a(w.space, w.a), b(w.space, w.b);
    EXPECT_FALSE(disjoint(a, b));
    EXPECT_FALSE(a.is_subset_of(b));
    EXPECT_FALSE(b.is_subset_of(a));
    EXPECT_EQ(hausdorff(a, b).value(), w.h_sets);
    EXPECT_EQ(complement_hausdorff(a, b)->value(), w.h_complements);
}

TEST(WitnessSearch, Deterministic) {
    EXPECT_EQ(complement_witness_search(16, 200, 9).to_json().dump(),
              complement_witness_search(16, 200, 9).to_json().dump());
}

TEST(MakeFamily, NamesAndParams) {
    for (const auto& name : family_names()) EXPECT_NO_THROW(make_family(name, {{"n_max", 4}}));
    const auto f = make_family("lp_basis", {{"p", "inf"}, {"n_max", "5"}});
    EXPECT_NEAR(gap_series(f, 5).gaps[0], 1.0, 1e-12);
    EXPECT_THROW(make_family("nope", nlohmann::json::object()), DomainError);
    EXPECT_THROW(make_family("lp_basis", {{"p", "x"}}), DomainError);
    EXPECT_DOUBLE_EQ(default_tolerance(make_family("shrinking_intervals", {{"pitch", 0.01}})), 0.02);
    EXPECT_DOUBLE_EQ(default_tolerance(make_family("lp_basis", nlohmann::json::object())), 1e-12);
}
