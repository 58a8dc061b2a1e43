#include "hauslab/suite.hpp"

namespace hauslab {

nlohmann::json SuiteReport::to_json(bool with_timing) const {
    nlohmann::json out;
    out["suite"] = suite;
    out["cases"] = cases;
    out["verdict"] = passed() ? "pass" : "fail";
    auto list = nlohmann::json::array();
    for (const auto& v : violations) {
        list.push_back({{"property", v.property}, {"witness", v.witness}});
    }
    out["violations"] = std::move(list);
    out["stats"] = stats;
    if (with_timing) {
        out["wall_time_ms"] = wall_time_ms;
    }
    return out;
}

}  // namespace hauslab
