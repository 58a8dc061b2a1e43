#include "hauslab/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include "hauslab/error.hpp"

namespace hauslab::io {

namespace fs = std::filesystem;

namespace {

double parse_entry(const nlohmann::json& v, const std::string& where) {
    double d = 0.0;
    if (v.is_number()) {
        d = v.get<double>();
    } else if (v.is_string()) {
        const auto s = v.get<std::string>();
        const auto slash = s.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                d = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
            } else {
                const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
                const double p = std::stod(num, &used);
                if (used != num.size()) throw std::invalid_argument(s);
                const double q = std::stod(den, &used);
                if (used != den.size() || q == 0.0) throw std::invalid_argument(s);
                d = p / q;
            }
        } catch (const std::exception&) {
            throw ParseError(where, "expected a number or a \"p/q\" rational, got \"" + s + "\"");
        }
    } else {
        throw ParseError(where, "expected a number");
    }
    if (std::isnan(d)) {
        throw ParseError(where, "NaN distance");
    }
    if (d < 0.0) {
        throw ParseError(where, "negative distance");
    }
    if (!std::isfinite(d)) {
        throw ParseError(where, "distance must be finite");
    }
    return d;
}

}  // namespace

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), "cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
        throw ParseError(path.string() + ":" + std::to_string(line), "invalid JSON");
    }
}

SpacePtr parse_space(const nlohmann::json& doc, const std::string& where, SpaceOptions options) {
    if (!doc.is_object()) {
        throw ParseError(where, "space must be a JSON object");
    }
    if (!doc.contains("points") || !doc["points"].is_array() || doc["points"].empty()) {
        throw ParseError(where + ".points", "expected a nonempty array");
    }
    if (!doc.contains("metric")) {
        throw ParseError(where + ".metric", "missing");
    }
    const auto& points = doc["points"];
    std::vector<std::string> ids;
    std::vector<double> coords;
    std::size_t dimension = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string at = where + ".points[" + std::to_string(i) + "]";
        const auto& p = points[i];
        if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) {
            throw ParseError(at + ".id", "expected a string id");
        }
        ids.push_back(p["id"].get<std::string>());
        if (p.contains("coords")) {
            const auto& c = p["coords"];
            if (!c.is_array()) {
                throw ParseError(at + ".coords", "expected an array of numbers");
            }
            if (i == 0) {
                dimension = c.size();
            } else if (c.size() != dimension) {
                throw ParseError(at + ".coords", "dimension differs from the first point");
            }
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (!c[k].is_number()) {
                    throw ParseError(at + ".coords[" + std::to_string(k) + "]", "expected a number");
                }
                coords.push_back(c[k].get<double>());
            }
        } else if (dimension != 0) {
            throw ParseError(at + ".coords", "missing");
        }
    }

    const auto& metric = doc["metric"];
    try {
        if (metric.is_string()) {
            const auto name = metric.get<std::string>();
            auto kind = coordinate_metric_from_string(name);
            if (!kind || *kind == CoordinateMetric::minkowski) {
                throw ParseError(where + ".metric", "unknown metric \"" + name + "\"");
            }
            if (*kind != CoordinateMetric::discrete && dimension == 0) {
                throw ParseError(where + ".points", "metric \"" + name + "\" needs coords on every point");
            }
            return FiniteMetricSpace::from_coordinates(std::move(ids), dimension, std::move(coords), *kind, options);
        }
        if (metric.is_object() && metric.contains("minkowski")) {
            const double p = metric["minkowski"].is_string() && metric["minkowski"] == "inf"
                                 ? std::numeric_limits<double>::infinity()
                                 : parse_entry(metric["minkowski"], where + ".metric.minkowski");
            return FiniteMetricSpace::from_coordinates(std::move(ids), dimension, std::move(coords),
                                                       CoordinateMetric::minkowski, options, p);
        }
        if (metric.is_object() && metric.contains("matrix")) {
            const auto& rows = metric["matrix"];
            const std::size_t n = ids.size();
            if (!rows.is_array() || rows.size() != n) {
                throw ParseError(where + ".metric.matrix", "expected " + std::to_string(n) + " rows");
            }
            std::vector<double> matrix;
            matrix.reserve(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::string at = where + ".metric.matrix[" + std::to_string(i) + "]";
                if (!rows[i].is_array() || rows[i].size() != n) {
                    throw ParseError(at, "expected " + std::to_string(n) + " entries");
                }
                for (std::size_t j = 0; j < n; ++j) {
                    matrix.push_back(parse_entry(rows[i][j], at + "[" + std::to_string(j) + "]"));
                }
            }
            return FiniteMetricSpace::from_matrix(std::move(ids), std::move(matrix), options);
        }
    } catch (const DomainError& e) {
        throw ParseError(where, e.what());
    } catch (const MetricViolation& e) {
        throw ParseError(where + ".metric", e.what());
    }
    throw ParseError(where + ".metric", "expected a metric name or {\"matrix\": ...}");
}

nlohmann::json space_to_json(const FiniteMetricSpace& space) {
    nlohmann::json doc;
    auto points = nlohmann::json::array();
    for (PointIndex i = 0; i < space.size(); ++i) {
        nlohmann::json p{{"id", space.id(i)}};
        if (space.has_coordinates()) {
            auto c = space.coordinates(i);
            p["coords"] = std::vector<double>(c.begin(), c.end());
        }
        points.push_back(std::move(p));
    }
    if (space.is_matrix()) {
        const std::size_t n = space.size();
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(std::vector<double>(space.matrix().begin() + i * n, space.matrix().begin() + (i + 1) * n));
        }
        doc["metric"] = {{"matrix", rows}};
    } else if (space.metric() == CoordinateMetric::minkowski) {
        doc["metric"] = {{"minkowski", space.minkowski_p()}};
    } else {
        doc["metric"] = std::string(to_string(space.metric()));
    }
    doc["points"] = std::move(points);
    return doc;
}

SpacePtr SpaceCache::load(const fs::path& path) {
    std::error_code ec;
    fs::path key = fs::weakly_canonical(path, ec);
    if (ec) key = fs::absolute(path);
    if (auto it = loaded_.find(key); it != loaded_.end()) {
        return it->second;
    }
    auto space = parse_space(read_json(path), path.string(), options_);
    loaded_.emplace(key, space);
    return space;
}

SpacePtr SpaceCache::resolve(const nlohmann::json& ref, const fs::path& base_dir, const std::string& where) {
    if (ref.is_string()) {
        fs::path p = ref.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return load(p);
    }
    if (ref.is_object()) {
        return parse_space(ref, where, options_);
    }
    throw ParseError(where, "expected a path or an inline space object");
}

PointSet load_subset(const fs::path& path, SpaceCache& cache, const SpacePtr& fallback) {
    const auto doc = read_json(path);
    const std::string where = path.string();
    if (!doc.is_object()) {
        throw ParseError(where, "subset must be a JSON object");
    }
    SpacePtr space = fallback;
    if (doc.contains("space")) {
        space = cache.resolve(doc["space"], path.parent_path(), where + ".space");
    }
    if (!space) {
        throw ParseError(where + ".space", "missing and no --space given");
    }
    if (!doc.contains("members") || !doc["members"].is_array() || doc["members"].empty()) {
        throw ParseError(where + ".members", "expected a nonempty array of point ids");
    }
    std::vector<PointIndex> members;
    for (std::size_t i = 0; i < doc["members"].size(); ++i) {
        const auto& id = doc["members"][i];
        const std::string at = where + ".members[" + std::to_string(i) + "]";
        if (!id.is_string()) {
            throw ParseError(at, "expected a string id");
        }
        auto idx = space->find(id.get<std::string>());
        if (!idx) {
            throw ParseError(at, "unknown point id \"" + id.get<std::string>() + "\"");
        }
        members.push_back(*idx);
    }
    return PointSet(space, std::move(members));
}

nlohmann::json subset_to_json(const PointSet& set, const nlohmann::json& space_ref) {
    return {{"space", space_ref}, {"members", set.ids()}};
}

PointMap load_map(const fs::path& path, SpaceCache& cache) {
    const auto doc = read_json(path);
    const std::string where = path.string();
    if (!doc.is_object()) {
        throw ParseError(where, "map must be a JSON object");
    }
    for (const char* key : {"domain", "codomain", "table"}) {
        if (!doc.contains(key)) {
            throw ParseError(where + "." + key, "missing");
        }
    }
    auto domain = cache.resolve(doc["domain"], path.parent_path(), where + ".domain");
    auto codomain = cache.resolve(doc["codomain"], path.parent_path(), where + ".codomain");
    const auto& table = doc["table"];
    if (!table.is_object()) {
        throw ParseError(where + ".table", "expected an object mapping ids to ids");
    }
    std::vector<PointIndex> out(domain->size());
    std::vector<bool> seen(domain->size(), false);
    for (const auto& [from, to] : table.items()) {
        const std::string at = where + ".table." + from;
        auto x = domain->find(from);
        if (!x) {
            throw ParseError(at, "unknown domain id");
        }
        if (!to.is_string()) {
            throw ParseError(at, "expected a codomain id");
        }
        auto y = codomain->find(to.get<std::string>());
        if (!y) {
            throw ParseError(at, "unknown codomain id \"" + to.get<std::string>() + "\"");
        }
        out[*x] = *y;
        seen[*x] = true;
    }
    for (PointIndex x = 0; x < domain->size(); ++x) {
        if (!seen[x]) {
            throw ParseError(where + ".table", "no image for domain point \"" + domain->id(x) + "\"");
        }
    }
    return PointMap(std::move(domain), std::move(codomain), std::move(out));
}

void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            fs::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

}  // namespace hauslab::io
