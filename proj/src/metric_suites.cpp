#include "hauslab/metric_suites.hpp"

#include "hauslab/json_support.hpp"
#include "hauslab/random_spaces.hpp"

namespace hauslab {

namespace {

nlohmann::json describe_space(const FiniteMetricSpace& space) {
    nlohmann::json j;
    j["points"] = space.ids();
    if (space.is_matrix()) {
        const std::size_t n = space.size();
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(std::vector<double>(space.matrix().begin() + i * n,
                                               space.matrix().begin() + (i + 1) * n));
        }
        j["matrix"] = std::move(rows);
    } else {
        j["metric"] = std::string(to_string(space.metric()));
    }
    return j;
}

}  // namespace

void check_metric_axioms(const SpacePtr& space, SuiteReport& report) {
    for (const auto& w : metric_axiom_violations(*space)) {
        std::vector<std::string> ids;
        for (auto p : w.points) ids.push_back(space->id(p));
        report.add("point-" + w.axiom, {{"points", ids}, {"detail", w.detail}});
    }
    if (!report.violations.empty() || space->size() > kExhaustiveLimit) {
        ++report.cases;
        return;
    }

    const auto sets = all_subsets(space);
    const std::size_t m = sets.size();
    const bool exact = space->has_integer_distances();
    auto le = [exact](double a, double b) { return exact ? a <= b : distance_le(a, b); };

    std::vector<double> h(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double hij = hausdorff(sets[i], sets[j]).value();
            h[i * m + j] = hij;
            ++report.cases;
            auto witness = [&] {
                return nlohmann::json{{"space", describe_space(*space)}, {"A", sets[i]}, {"B", sets[j]}, {"H", hij}};
            };
            if (!(hij >= 0.0)) {
                report.add("nonnegativity", witness());
            }
            if ((hij == 0.0) != (i == j)) {
                report.add("identity-of-indiscernibles", witness());
            }
            const double oracle = hausdorff_via_neighborhoods(sets[i], sets[j]).value();
            if (oracle != hij) {
                auto w = witness();
                w["via_neighborhoods"] = oracle;
                report.add("neighborhood-oracle", std::move(w));
            }
            const bool zero = directed_hausdorff(sets[i], sets[j]) == 0.0;
            if (zero != sets[i].is_subset_of(sets[j])) {
                report.add("directed-zero-iff-subset", witness());
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (h[i * m + j] != h[j * m + i]) {
                report.add("symmetry", {{"space", describe_space(*space)}, {"A", sets[i]}, {"B", sets[j]}});
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const double direct = h[i * m + k];
            for (std::size_t j = 0; j < m; ++j) {
                if (!le(direct, h[i * m + j] + h[j * m + k])) {
                    report.add("triangle", {{"space", describe_space(*space)},
                                            {"A", sets[i]}, {"B", sets[j]}, {"C", sets[k]},
                                            {"H(A,C)", direct},
                                            {"H(A,B)+H(B,C)", h[i * m + j] + h[j * m + k]}});
                }
            }
        }
    }
}

SuiteReport metric_axiom_suite(std::uint64_t seed, std::size_t spaces) {
    return run_suite("metric-axioms", [&](SuiteReport& report) {
        const Rng root(seed);
        for (std::size_t s = 0; s < spaces; ++s) {
            Rng rng = root.split(s);
            const std::size_t n = 1 + s % kExhaustiveLimit;
            check_metric_axioms(random_integer_metric(rng, n), report);
        }
        report.stats["spaces"] = spaces;
    });
}

SuiteReport metric_axiom_suite(const SpacePtr& space) {
    return run_suite("metric-axioms", [&](SuiteReport& report) {
        check_metric_axioms(space, report);
        report.stats["spaces"] = 1;
    });
}

SuiteReport lemma_complement_suite(std::uint64_t seed, std::size_t trials, std::size_t size) {
    return run_suite("lemma-complements", [&](SuiteReport& report) {
        const Rng root(seed);
        std::size_t count_a = 0, count_b = 0, count_c = 0, vacuous = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = root.split(t);
            const SpacePtr space = t % 2 == 0 ? random_integer_metric(rng, size)
                                              : random_euclidean_space(rng, size);
            std::vector<PointIndex> a, b;
            while (a.empty() || b.empty()) {
                a.clear();
                b.clear();
                for (PointIndex x = 0; x < size; ++x) {
                    switch (t % 3) {
                        case 0:  // unconstrained
                            if (rng.coin()) a.push_back(x);
                            if (rng.coin()) b.push_back(x);
                            break;
                        case 1: {  // disjoint
                            const auto r = rng.below(3);
                            if (r == 0) a.push_back(x);
                            if (r == 1) b.push_back(x);
                            break;
                        }
                        default: {  // nested, A inside B
                            if (rng.coin(0.7)) {
                                b.push_back(x);
                                if (rng.coin()) a.push_back(x);
                            }
                            break;
                        }
                    }
                }
            }
            const PointSet set_a(space, a);
            const PointSet set_b(space, b);
            const auto r = complement_hausdorff_inequalities(set_a, set_b);
            ++report.cases;
            count_a += r.a.applicable && !r.a.vacuous;
            count_b += r.b.applicable;
            count_c += r.c.applicable && !r.c.vacuous;
            vacuous += r.a.vacuous;
            auto witness = [&](const ClauseResult& c) {
                return nlohmann::json{{"trial", t}, {"A", set_a}, {"B", set_b},
                                      {"lhs", c.lhs}, {"rhs", c.rhs}};
            };
            if (!r.a.satisfied) report.add("clause-a", witness(r.a));
            if (!r.b.satisfied) report.add("clause-b", witness(r.b));
            if (!r.c.satisfied) report.add("clause-c", witness(r.c));
        }
        report.stats["clause_a_checked"] = count_a;
        report.stats["clause_b_checked"] = count_b;
        report.stats["clause_c_checked"] = count_c;
        report.stats["vacuous"] = vacuous;
    });
}

}  // namespace hauslab
