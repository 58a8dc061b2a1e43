#pragma once

#include <json.hpp>

#include "hauslab/extended_real.hpp"
#include "hauslab/point_set.hpp"

namespace hauslab {

/// Infinity serialises as the string "inf".
inline void to_json(nlohmann::json& j, const ExtendedReal& v) {
    if (v.is_infinite()) {
        j = "inf";
    } else {
        j = v.value();
    }
}

/// A point set serialises as its list of point ids.
inline void to_json(nlohmann::json& j, const PointSet& s) {
    j = s.ids();
}

}  // namespace hauslab
