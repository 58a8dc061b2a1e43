#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace hauslab {

/// A property that failed, with enough input to replay it.
struct Violation {
    std::string property;
    nlohmann::json witness;
};

struct SuiteReport {
    std::string suite;
    std::size_t cases = 0;
    std::vector<Violation> violations;
    double wall_time_ms = 0.0;
    /// Free-form statistics (max discrepancy, clause counts, ...).
    nlohmann::json stats = nlohmann::json::object();

    bool passed() const { return violations.empty(); }

    void add(std::string property, nlohmann::json witness) {
        violations.push_back({std::move(property), std::move(witness)});
    }

    /// Wall time is left out unless asked for so reports stay byte-identical.
    nlohmann::json to_json(bool with_timing = false) const;
};

/// Runs `body(report)` and records the elapsed time.
template <typename Body>
SuiteReport run_suite(std::string name, Body&& body) {
    SuiteReport report;
    report.suite = std::move(name);
    const auto start = std::chrono::steady_clock::now();
    body(report);
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hauslab
