#include "hauslab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hauslab/error.hpp"
#include "hauslab/gallery.hpp"
#include "hauslab/io.hpp"
#include "hauslab/json_support.hpp"
#include "hauslab/lift.hpp"
#include "hauslab/metric_suites.hpp"
#include "hauslab/sequences.hpp"

namespace hauslab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string name;  // gallery or suite name
    std::string space, a, b, map, gallery, config, out, suite;
    std::string format;  // empty: the command default
    std::optional<std::size_t> n, trials;
    std::optional<double> pitch, p, eps, tol;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    bool directed = false;
    bool timing = false;
    std::vector<std::string> params;
    std::string emit, emit_family;
};

/// An expected failure that maps straight onto an exit code.
class Exit : public std::runtime_error {
public:
    Exit(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_param_value(const std::string& v) {
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec == std::errc() && ptr == v.data() + v.size()) {
        return d;
    }
    return v;
}

json collect_params(const RunConfig& cfg, json params = json::object()) {
    for (const auto& kv : cfg.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Exit(kMalformed, "--param expects key=value, got '" + kv + "'");
        }
        params[kv.substr(0, eq)] = parse_param_value(kv.substr(eq + 1));
    }
    if (cfg.pitch) params["pitch"] = *cfg.pitch;
    if (cfg.p) params["p"] = *cfg.p;
    return params;
}

/// The family horizon N also sizes the family unless a parameter already does.
NestedFamily build_gallery(const std::string& name, json params, std::optional<std::size_t> horizon) {
    if (horizon) {
        if (name == "atsuji_union") {
            if (!params.contains("m_max") && *horizon > 51) params["m_max"] = *horizon - 1;
        } else if (!params.contains("n_max")) {
            params["n_max"] = *horizon;
        }
    }
    return gallery::make_family(name, params);
}

std::size_t family_horizon(const NestedFamily& family, std::optional<std::size_t> requested) {
    const std::size_t max = family.max_index().value_or(16);
    const std::size_t n = requested.value_or(max);
    if (n > max) {
        throw Exit(kMalformed, "horizon " + std::to_string(n) + " exceeds the family length " + std::to_string(max));
    }
    return n;
}

/// Writes the document to --out when given, otherwise to stdout.
void deliver(const RunConfig& cfg, const json& doc, std::ostream& out) {
    if (cfg.out.empty()) {
        out << dump(doc);
    } else {
        io::atomic_write(cfg.out, dump(doc));
    }
}

std::pair<SpacePtr, io::SpaceCache> ambient(const RunConfig& cfg, SpaceOptions options = {}) {
    io::SpaceCache cache(options);
    SpacePtr space;
    if (!cfg.space.empty()) space = cache.load(cfg.space);
    return {space, std::move(cache)};
}

PointSet require_subset(const std::string& path, const char* flag, io::SpaceCache& cache, const SpacePtr& space) {
    if (path.empty()) {
        throw Exit(kMalformed, std::string("missing ") + flag);
    }
    return io::load_subset(path, cache, space);
}

int cmd_dist(const RunConfig& cfg, std::ostream& out) {
    auto [space, cache] = ambient(cfg);
    const auto a = require_subset(cfg.a, "--a", cache, space);
    const auto b = require_subset(cfg.b, "--b", cache, space);
    require_same_space(a, b);
    const Parallelism par{cfg.threads};
    const ExtendedReal value = cfg.directed ? directed_hausdorff(a, b, par) : hausdorff(a, b, par);
    json record{{"command", "dist"}, {"directed", cfg.directed}, {"a", a}, {"b", b}, {"value", value}};
    if (cfg.directed) {
        const auto w = directed_hausdorff_witness(a, b);
        record["witness"] = {{"from", a.space().id(w.from)}, {"to", a.space().id(w.to)}};
    }
    if (cfg.format == "json") {
        out << dump(record);
    } else {
        out << to_string(value) << "\n";
    }
    if (!cfg.out.empty()) io::atomic_write(cfg.out, dump(record));
    return kOk;
}

json clause_json(const ClauseResult& c) {
    return {{"applicable", c.applicable}, {"vacuous", c.vacuous}, {"lhs", c.lhs}, {"rhs", c.rhs},
            {"satisfied", c.satisfied}};
}

int cmd_dhat(const RunConfig& cfg, std::ostream& out) {
    auto [space, cache] = ambient(cfg);
    const auto a = require_subset(cfg.a, "--a", cache, space);
    const ExtendedReal value = gap_functional(a);
    json record{{"command", "dhat"}, {"a", a}, {"value", value}, {"diameter", diameter(a)}};
    int code = kOk;
    if (!cfg.b.empty()) {
        const auto b = io::load_subset(cfg.b, cache, space);
        require_same_space(a, b);
        const auto report = complement_hausdorff_inequalities(a, b);
        record["b"] = b;
        record["dhat_b"] = gap_functional(b);
        record["hausdorff"] = hausdorff(a, b);
        if (auto hc = complement_hausdorff(a, b)) record["complement_hausdorff"] = *hc;
        record["clauses"] = {{"a", clause_json(report.a)}, {"b", clause_json(report.b)}, {"c", clause_json(report.c)}};
        record["verdict"] = report.all_satisfied() ? "pass" : "fail";
        if (!report.all_satisfied()) code = kViolation;
    }
    if (cfg.format == "json" || !cfg.b.empty()) {
        out << dump(record);
    } else {
        out << to_string(value) << "\n";
    }
    if (!cfg.out.empty()) io::atomic_write(cfg.out, dump(record));
    return code;
}

int cmd_lift_check(const RunConfig& cfg, std::ostream& out) {
    if (cfg.map.empty()) throw Exit(kMalformed, "missing --map");
    io::SpaceCache cache;
    const PointMap map = io::load_map(cfg.map, cache);
    Rng rng(cfg.seed);
    auto family = default_family(map.domain(), rng, cfg.trials.value_or(64));
    const double tol = cfg.tol.value_or(1e-12);

    auto report = run_suite("lift-check", [&](SuiteReport& r) {
        const auto point = map_constants(map);
        const auto lifted = lifted_constants(map, family, Parallelism{cfg.threads});
        r.cases += check_lift_preservation(map, family, LiftBound::lipschitz, r, tol);
        if (point.expansive_inf > 0.0) {
            r.cases += check_lift_preservation(map, family, LiftBound::expansive, r, tol);
        }
        r.stats["injective"] = map.injective();
        r.stats["surjective"] = map.surjective();
        r.stats["lipschitz_sup"] = point.lipschitz_sup;
        r.stats["expansive_inf"] = point.expansive_inf;
        r.stats["lifted_lipschitz_sup"] = lifted.lipschitz_sup;
        r.stats["lifted_expansive_inf"] = lifted.expansive_inf;
        r.stats["family_size"] = family.size();
    });
    json doc = report.to_json(cfg.timing);
    if (!cfg.a.empty() && !cfg.b.empty()) {
        const auto a = io::load_subset(cfg.a, cache, map.domain());
        const auto b = io::load_subset(cfg.b, cache, map.domain());
        const auto ta = lift_set(map, a);
        const auto tb = lift_set(map, b);
        doc["pair"] = {{"a", a}, {"b", b}, {"image_a", ta}, {"image_b", tb},
                       {"hausdorff", hausdorff(a, b)}, {"image_hausdorff", hausdorff(ta, tb)}};
    }
    deliver(cfg, doc, out);
    return report.passed() ? kOk : kViolation;
}

struct SequenceInput {
    std::optional<NestedFamily> family;
    std::size_t horizon = 0;
    double eps = 0.5;
    double tol = 1e-12;
};

SequenceInput sequence_input(const RunConfig& cfg) {
    json config = json::object();
    fs::path base_dir;
    if (!cfg.config.empty()) {
        config = io::read_json(cfg.config);
        base_dir = fs::path(cfg.config).parent_path();
        if (!config.is_object()) throw ParseError(cfg.config, "config must be a JSON object");
    }
    auto number = [&](const char* key) -> std::optional<double> {
        if (!config.contains(key)) return std::nullopt;
        if (!config[key].is_number()) throw ParseError(cfg.config + "." + key, "expected a number");
        return config[key].get<double>();
    };
    std::optional<std::size_t> horizon = cfg.n;
    if (!horizon) {
        if (auto v = number("N")) {
            if (*v < 1 || *v != std::floor(*v)) throw ParseError(cfg.config + ".N", "expected a positive integer");
            horizon = static_cast<std::size_t>(*v);
        }
    }

    SequenceInput in;
    json source = cfg.gallery.empty() ? (config.contains("gallery") ? config["gallery"] : json()) : json(cfg.gallery);
    if (source.is_string()) {
        json params = config.contains("params") ? config["params"] : json::object();
        if (auto pitch = number("pitch")) params["pitch"] = *pitch;
        in.family = build_gallery(source.get<std::string>(), collect_params(cfg, params), horizon);
        in.horizon = family_horizon(*in.family, horizon);
    } else if (source.is_object() && source.contains("files") && source["files"].is_array()) {
        io::SpaceCache cache;
        SpacePtr space;
        if (!cfg.space.empty()) space = cache.load(cfg.space);
        std::vector<PointSet> sets;
        for (std::size_t i = 0; i < source["files"].size(); ++i) {
            const auto& f = source["files"][i];
            if (!f.is_string()) throw ParseError(cfg.config + ".gallery.files[" + std::to_string(i) + "]", "expected a path");
            fs::path p = f.get<std::string>();
            if (p.is_relative()) p = base_dir / p;
            sets.push_back(io::load_subset(p, cache, space));
            require_same_space(sets.front(), sets.back());
        }
        if (sets.size() < 4) throw ParseError(cfg.config + ".gallery.files", "need at least 4 sets");
        validate_nesting(sets);
        in.family = NestedFamily::from_sets(std::move(sets), "files");
        in.horizon = family_horizon(*in.family, horizon);
    } else {
        throw Exit(kMalformed, "sequence needs --gallery or a config with \"gallery\"");
    }
    in.eps = cfg.eps ? *cfg.eps : number("eps").value_or(0.5);
    in.tol = cfg.tol ? *cfg.tol : number("tol").value_or(gallery::default_tolerance(*in.family));
    return in;
}

int cmd_sequence(const RunConfig& cfg, std::ostream& out) {
    const auto in = sequence_input(cfg);
    if (in.horizon < 4) throw Exit(kMalformed, "sequence needs N >= 4");
    const Parallelism par{cfg.threads};
    // Validate the whole prefix first so nesting errors surface before any work.
    in.family->prefix(in.horizon);
    auto report = classify(*in.family, in.horizon, in.tol, par, in.eps);
    json doc = report.to_json();
    doc["params"] = in.family->params();
    doc["eps"] = in.eps;
    doc["tol"] = in.tol;
    const std::string csv = report.to_csv();
    if (!cfg.out.empty()) {
        io::atomic_write(cfg.out + ".json", dump(doc));
        io::atomic_write(cfg.out + ".csv", csv);
    } else if (cfg.format == "csv") {
        out << csv;
    } else {
        out << dump(doc);
    }
    return kOk;
}

int cmd_gallery(const RunConfig& cfg, std::ostream& out) {
    if (cfg.name == "complement-witness") {
        const auto report = gallery::complement_witness_search(16, cfg.trials.value_or(10000), cfg.seed);
        deliver(cfg, report.to_json(), out);
        return report.found_both() ? kOk : kViolation;
    }
    const auto family = build_gallery(cfg.name, collect_params(cfg), cfg.n);
    const std::size_t horizon = family_horizon(family, cfg.n);
    const auto sets = family.prefix(horizon);
    const auto& space = family.space();

    json summary{{"gallery", family.label()}, {"params", family.params()}, {"points", space->size()}, {"horizon", horizon}};
    auto sizes = json::array();
    for (const auto& s : sets) sizes.push_back(s.size());
    summary["set_sizes"] = sizes;
    if (family.limit()) summary["limit_size"] = family.limit()->size();

    fs::path space_path = cfg.emit;
    if (!cfg.emit_family.empty() && space_path.empty()) {
        space_path = fs::path(cfg.emit_family) / "space.json";
    }
    if (!space_path.empty()) {
        io::atomic_write(space_path, io::space_to_json(*space).dump() + "\n");
        summary["space_file"] = space_path.string();
    }
    if (!cfg.emit_family.empty()) {
        const fs::path dir = cfg.emit_family;
        fs::create_directories(dir);
        const auto ref = fs::proximate(fs::absolute(space_path), fs::absolute(dir)).generic_string();
        auto files = json::array();
        for (std::size_t n = 1; n <= sets.size(); ++n) {
            const fs::path p = dir / ("K" + std::to_string(n) + ".json");
            io::atomic_write(p, io::subset_to_json(sets[n - 1], ref).dump() + "\n");
            files.push_back(p.filename().string());
        }
        if (family.limit()) {
            io::atomic_write(dir / "limit.json", io::subset_to_json(*family.limit(), ref).dump() + "\n");
        }
        io::atomic_write(dir / "sequence.json", dump(json{{"gallery", {{"files", files}}}, {"N", sets.size()}}));
        summary["family_dir"] = dir.string();
    }
    out << dump(summary);
    return kOk;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"metric-axioms", "lemma-complements", "lift-lipschitz",
                                                "lift-expansive", "singleton-isometry", "chain-bounds"};
    return names;
}

int cmd_props(const RunConfig& cfg, std::ostream& out) {
    const std::string suite = cfg.suite.empty() ? cfg.name : cfg.suite;
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw Exit(kMalformed, "unknown suite '" + suite + "'");
    }
    // A user-supplied space is checked, not trusted: load it without validation.
    SpaceOptions options;
    options.validate = suite != "metric-axioms";
    auto [space, cache] = ambient(cfg, options);

    SuiteReport report;
    if (suite == "metric-axioms") {
        report = space ? metric_axiom_suite(space) : metric_axiom_suite(cfg.seed, cfg.trials.value_or(50));
    } else if (suite == "lemma-complements") {
        report = lemma_complement_suite(cfg.seed, cfg.trials.value_or(500));
    } else if (suite == "lift-lipschitz") {
        report = lift_suite(LiftBound::lipschitz, cfg.seed, cfg.trials.value_or(200));
    } else if (suite == "lift-expansive") {
        report = lift_suite(LiftBound::expansive, cfg.seed, cfg.trials.value_or(200));
    } else if (suite == "singleton-isometry") {
        report = space ? singleton_isometry_suite(space, cfg.seed)
                       : singleton_isometry_suite(cfg.seed, cfg.trials.value_or(50));
    } else {
        const auto families = gallery::reference_families();
        report = chain_bounds_suite(families, cfg.seed, cfg.trials.value_or(100), cfg.eps.value_or(0.5));
    }
    const json doc = report.to_json(cfg.timing);
    deliver(cfg, doc, out);
    if (!cfg.out.empty()) {
        out << report.suite << ": " << doc["verdict"].get<std::string>() << " (" << report.cases << " cases, "
            << report.violations.size() << " violations)\n";
    }
    return report.passed() ? kOk : kViolation;
}

void add_io_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--space", cfg.space, "Space file (subset files may name their own)");
    sub->add_option("--out", cfg.out, "Output path");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", cfg.threads, "Worker threads for the outer loops")->check(CLI::Range(1u, 256u));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Hausdorff distance laboratory on finite metric spaces", "hauslab"};
    app.require_subcommand(1);

    auto* dist = app.add_subcommand("dist", "Hausdorff distance between two subsets");
    add_io_options(dist, cfg);
    dist->add_option("--a", cfg.a, "Subset file A");
    dist->add_option("--b", cfg.b, "Subset file B");
    dist->add_flag("--directed", cfg.directed, "Directed distance sup_{x in A} d(x, B)");

    auto* dhat = app.add_subcommand("dhat", "Gap functional sup_{x in A} d(x, X \\ A); with --b, the complement clauses");
    add_io_options(dhat, cfg);
    dhat->add_option("--a", cfg.a, "Subset file A");
    dhat->add_option("--b", cfg.b, "Subset file B");

    auto* lift = app.add_subcommand("lift-check", "Lipschitz and expansive constants of a map and its set lift");
    add_io_options(lift, cfg);
    lift->add_option("--map", cfg.map, "Map file");
    lift->add_option("--a", cfg.a, "Subset file A over the domain");
    lift->add_option("--b", cfg.b, "Subset file B over the domain");
    lift->add_option("--trials", cfg.trials, "Random family size for domains over 6 points");
    lift->add_option("--seed", cfg.seed, "Seed");
    lift->add_option("--tol", cfg.tol, "Comparison tolerance");
    lift->add_flag("--timing", cfg.timing, "Include wall time in the report");

    auto* seq = app.add_subcommand("sequence", "Gap series, chain and summability verdict of a nested family");
    add_io_options(seq, cfg);
    seq->add_option("--config", cfg.config, "Sequence config file");
    seq->add_option("--gallery", cfg.gallery, "Gallery name");
    seq->add_option("--n", cfg.n, "Horizon N");
    seq->add_option("--pitch", cfg.pitch, "Grid pitch");
    seq->add_option("--p", cfg.p, "Exponent for lp_basis");
    seq->add_option("--param", cfg.params, "Gallery parameter key=value");
    seq->add_option("--eps", cfg.eps, "Chain epsilon in (0, 1)");
    seq->add_option("--tol", cfg.tol, "Verdict tolerance");

    auto* gal = app.add_subcommand("gallery", "Build a gallery family and emit space/subset files");
    add_io_options(gal, cfg);
    gal->add_option("name", cfg.name, "Gallery name, or complement-witness")->required();
    gal->add_option("--n", cfg.n, "Number of sets to emit");
    gal->add_option("--pitch", cfg.pitch, "Grid pitch");
    gal->add_option("--p", cfg.p, "Exponent for lp_basis");
    gal->add_option("--param", cfg.params, "Gallery parameter key=value");
    gal->add_option("--emit", cfg.emit, "Write the ambient space file here");
    gal->add_option("--emit-family", cfg.emit_family, "Write K1.json.. and sequence.json into this directory");
    gal->add_option("--trials", cfg.trials, "Trials for complement-witness");
    gal->add_option("--seed", cfg.seed, "Seed");

    auto* props = app.add_subcommand("props", "Run a property suite");
    add_io_options(props, cfg);
    props->add_option("name", cfg.name, "Suite name");
    props->add_option("--suite", cfg.suite, "Suite name");
    props->add_option("--trials", cfg.trials, "Trials (spaces, maps or families, per suite)");
    props->add_option("--seed", cfg.seed, "Seed");
    props->add_option("--eps", cfg.eps, "Chain epsilon for chain-bounds");
    props->add_flag("--timing", cfg.timing, "Include wall time in the report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        if (*dist) return cmd_dist(cfg, out);
        if (*dhat) return cmd_dhat(cfg, out);
        if (*lift) return cmd_lift_check(cfg, out);
        if (*seq) return cmd_sequence(cfg, out);
        if (*gal) return cmd_gallery(cfg, out);
        return cmd_props(cfg, out);
    } catch (const Exit& e) {
        err << "error: " << e.what() << "\n";
        return e.code();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const AmbientMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kAmbientMismatch;
    } catch (const NestingError& e) {
        err << "error: nesting violation at n=" << e.index() << ": " << e.what() << "\n";
        return kNestingViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    }
}

}  // namespace hauslab::cli
