#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "hauslab/lift.hpp"

namespace hauslab::io {

/**
 * Space file:
 *   {"metric": "euclidean" | "manhattan" | "chebyshev" | "discrete"
 *              | {"minkowski": p} | {"matrix": [[...], ...]},
 *    "points": [{"id": "a", "coords": [0, 0]}, ...]}
 * Matrix entries are numbers or "p/q" strings. Errors are ParseError
 * naming the field (or line, for JSON syntax errors).
 */
SpacePtr parse_space(const nlohmann::json& doc, const std::string& where, SpaceOptions options = {});
nlohmann::json space_to_json(const FiniteMetricSpace& space);

/// Reads a JSON file; syntax errors become ParseError("<path>:<line>").
nlohmann::json read_json(const std::filesystem::path& path);

/// Loads spaces once per canonical path so sets read from files that name
/// the same space file share one ambient object.
class SpaceCache {
public:
    explicit SpaceCache(SpaceOptions options = {}) : options_(options) {}

    SpacePtr load(const std::filesystem::path& path);
    /// `ref` is a path (relative to `base_dir`) or an inline space object.
    SpacePtr resolve(const nlohmann::json& ref, const std::filesystem::path& base_dir,
                     const std::string& where);

    const SpaceOptions& options() const noexcept { return options_; }

private:
    SpaceOptions options_;
    std::map<std::filesystem::path, SpacePtr> loaded_;
};

/// Subset file: {"space": path-or-inline, "members": [ids]}. When the file
/// has no "space" field, `fallback` is used.
PointSet load_subset(const std::filesystem::path& path, SpaceCache& cache,
                     const SpacePtr& fallback = nullptr);
nlohmann::json subset_to_json(const PointSet& set, const nlohmann::json& space_ref);

/// Map file: {"domain": path, "codomain": path, "table": {"id": "id", ...}}.
PointMap load_map(const std::filesystem::path& path, SpaceCache& cache);

/// Writes to a temporary sibling then renames, so no partial file is left behind.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace hauslab::io
