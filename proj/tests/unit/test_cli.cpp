#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "hauslab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = hauslab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixtures::path(name); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "hauslab_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(CliDist, X3Values) {
    auto r = run({"dist", "--a", fx("x3_a.json"), "--b", fx("x3_bc.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4\n");
    EXPECT_EQ(run({"dist", "--a", fx("x3_bc.json"), "--b", fx("x3_bc.json")}).out, "0\n");
    r = run({"dist", "--a", fx("x3_a.json"), "--b", fx("x3_bc.json"), "--directed", "--format", "json"});
    EXPECT_EQ(json::parse(r.out)["value"], 3.0);
}

TEST(CliDist, WritesRecord) {
    const auto dir = scratch("dist");
    auto r = run({"dist", "--space", fx("x3.json"), "--a", fx("x3_a.json"), "--b", fx("x3_bc.json"), "--out",
                  (dir / "d.json").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(slurp(dir / "d.json"))["value"], 4.0);
}

TEST(CliDist, ErrorCodes) {
    auto r = run({"dist", "--a", fx("x3_a.json"), "--b", fx("line4_0.json")});
    EXPECT_EQ(r.code, 3);
    r = run({"dist", "--space", fx("broken_syntax.json"), "--a", fx("x3_a.json"), "--b", fx("x3_a.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("broken_syntax.json:6"), std::string::npos) << r.err;
    r = run({"dist", "--space", fx("nan_matrix.json"), "--a", fx("x3_a.json"), "--b", fx("x3_a.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("matrix[0][1]"), std::string::npos) << r.err;
    EXPECT_EQ(run({"dist", "--a", fx("x3_a.json")}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliDist, NoPartialFileOnError) {
    const auto dir = scratch("dist_error");
    const auto out = dir / "d.json";
    run({"dist", "--a", fx("x3_a.json"), "--b", fx("line4_0.json"), "--out", out.string()});
    EXPECT_FALSE(fs::exists(out));
}

TEST(CliDhat, ValuesAndInfinity) {
    EXPECT_EQ(run({"dhat", "--a", fx("x3_a.json")}).out, "3\n");
    EXPECT_EQ(run({"dhat", "--a", fx("x3_all.json")}).out, "inf\n");
    auto r = run({"dhat", "--a", fx("x3_all.json"), "--format", "json"});
    EXPECT_EQ(json::parse(r.out)["value"], "inf");
    r = run({"dhat", "--a", fx("x3_a.json"), "--b", fx("x3_ab.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["verdict"], "pass");
}

TEST(CliProps, SuitesPass) {
    for (const char* suite : {"metric-axioms", "lemma-complements", "lift-lipschitz", "lift-expansive",
                              "singleton-isometry"}) {
        auto r = run({"props", suite, "--trials", "10"});
        EXPECT_EQ(r.code, 0) << suite << r.out;
        EXPECT_EQ(json::parse(r.out)["verdict"], "pass");
    }
}

TEST(CliProps, SingletonIsometryOnX3) {
    auto r = run({"props", "--suite", "singleton-isometry", "--space", fx("x3.json")});
    EXPECT_EQ(r.code, 0);
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["stats"]["max_discrepancy_points"], 0.0);
    EXPECT_EQ(doc["stats"]["max_discrepancy_sets"], 0.0);
}

TEST(CliProps, CorruptedMatrixFailsWithTriangleWitness) {
    const auto dir = scratch("props");
    auto r = run({"props", "metric-axioms", "--space", fx("corrupted_matrix.json"), "--out", (dir / "r.json").string()});
    EXPECT_EQ(r.code, 1);
    const auto doc = json::parse(slurp(dir / "r.json"));
    EXPECT_EQ(doc["verdict"], "fail");
    ASSERT_FALSE(doc["violations"].empty());
    EXPECT_NE(doc["violations"][0]["property"].get<std::string>().find("triangle"), std::string::npos);
    EXPECT_EQ(doc["violations"][0]["witness"]["points"], (json{"u", "v", "w"}));
}

TEST(CliProps, UnknownSuite) { EXPECT_EQ(run({"props", "no-such-suite"}).code, 2); }

TEST(CliProps, ReportsAreByteIdentical) {
    const auto a = run({"props", "lemma-complements", "--trials", "50", "--seed", "7"});
    const auto b = run({"props", "lemma-complements", "--trials", "50", "--seed", "7"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out).count("wall_time_ms"), 0u);
    EXPECT_EQ(json::parse(run({"props", "metric-axioms", "--trials", "3", "--timing"}).out).count("wall_time_ms"), 1u);
}

TEST(CliLift, DoublingMap) {
    auto r = run({"lift-check", "--map", fx("doubling_map.json"), "--a", fx("line3_0.json"), "--b", fx("line3_12.json")});
    EXPECT_EQ(r.code, 0);
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["stats"]["lipschitz_sup"], 2.0);
    EXPECT_EQ(doc["stats"]["lifted_expansive_inf"], 2.0);
    EXPECT_EQ(doc["pair"]["image_hausdorff"], 4.0);
    EXPECT_EQ(doc["pair"]["hausdorff"], 2.0);
}

TEST(CliSequence, ShrinkingIntervalsCsv) {
    const double pitch = 1e-3;
    const auto dir = scratch("seq");
    const auto stem = (dir / "shrink").string();
    auto r = run({"sequence", "--gallery", "shrinking_intervals", "--n", "16", "--pitch", "0.001", "--out", stem});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(stem + ".csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n,H_n,partial_sum,delta_n,chain_step");
    for (int n = 1; n < 16; ++n) {
        ASSERT_TRUE(std::getline(csv, line));
        const double h = std::stod(line.substr(line.find(',') + 1));
        EXPECT_NEAR(h, 1.0 / n - 1.0 / (n + 1), pitch) << line;
    }
    const auto doc = json::parse(slurp(stem + ".json"));
    EXPECT_EQ(doc["summability"]["verdict"], "summable-looking");
}

TEST(CliSequence, LpBasisConstantColumn) {
    auto r = run({"sequence", "--gallery", "lp_basis", "--p", "2", "--n", "16", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(r.out);
    std::string line;
    std::getline(csv, line);
    for (int n = 1; n < 16; ++n) {
        std::getline(csv, line);
        EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), std::sqrt(2.0), 1e-12);
    }
}

TEST(CliSequence, PowerFunctionsColumn) {
    auto r = run({"sequence", "--gallery", "power_functions", "--n", "16", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(r.out);
    std::string line;
    std::getline(csv, line);
    for (int n = 1; n < 16; ++n) {
        std::getline(csv, line);
        const double expected = std::pow(n, n) / std::pow(n + 1, n + 1);
        EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), expected, 2e-3) << line;
    }
}

TEST(CliSequence, NestingViolationExitsWithIndex) {
    auto r = run({"sequence", "--config", fx("bad_nesting.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("n=2"), std::string::npos) << r.err;
}

TEST(CliSequence, UnknownGallery) { EXPECT_EQ(run({"sequence", "--gallery", "nope"}).code, 2); }

TEST(CliGallery, EmittedFilesFeedTheOtherCommands) {
    const auto dir = scratch("gallery");
    auto r = run({"gallery", "shrinking_intervals", "--pitch", "0.01", "--n", "6", "--emit", (dir / "space.json").string(),
                  "--emit-family", (dir / "family").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "family" / "K6.json"));

    r = run({"dist", "--a", (dir / "family" / "K1.json").string(), "--b", (dir / "family" / "K2.json").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "0.5\n");

    r = run({"sequence", "--config", (dir / "family" / "sequence.json").string(), "--format", "csv"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\n1,0.5,"), std::string::npos) << r.out;
}

TEST(CliGallery, ComplementWitness) {
    auto r = run({"gallery", "complement-witness"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["found_both"].get<bool>());
}
