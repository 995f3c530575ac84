#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "salemap/harness.hpp"
#include "salemap/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace salemap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = harness::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "salemap_test_harness";
    fs::create_directories(dir);
    return (dir / name).string();
}

}  // namespace

TEST_CASE("construct cantor then count-aps") {
    const auto c2 = scratch("c2.set");
    const auto r = run({"construct", "--kind", "cantor", "--depth", "2", "--out", c2});
    REQUIRE(r.code == 0);
    CHECK(io::read_set(c2) == DiscreteSet(10, {1, 3, 7, 9}));

    const auto counted = run({"count-aps", "--in", c2, "--format", "json"});
    REQUIRE(counted.code == 0);
    const auto j = json::parse(counted.out);
    CHECK(j["genuineCount"] == 0);
    CHECK(j["trivialCount"] == 4);
    CHECK(j["congruenceCount"] == 12);
}

TEST_CASE("salem construct, verify and reproducibility") {
    const auto set1 = scratch("salem1.set");
    const auto set2 = scratch("salem2.set");
    const auto trace1 = scratch("trace1.json");
    const auto trace2 = scratch("trace2.json");
    const std::vector<std::string> base{"construct", "--kind", "salem", "--branching", "8", "--keep", "6",
                                        "--depth", "4", "--seed", "1"};
    auto args = base;
    args.insert(args.end(), {"--out", set1, "--trace", trace1});
    const auto r1 = run(args);
    REQUIRE(r1.code == 0);
    const auto first_trace = io::read_file(trace1);
    const auto first_set = io::read_file(set1);
    const auto r2 = run(args);
    REQUIRE(r2.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(io::read_file(trace1) == first_trace);
    CHECK(io::read_file(set1) == first_set);

    auto other = base;
    other[other.size() - 1] = "2";
    other.insert(other.end(), {"--out", set2, "--trace", trace2});
    REQUIRE(run(other).code == 0);
    CHECK(io::read_file(set2) != first_set);
    const auto summary = json::parse(r1.out);
    CHECK(summary["seed"] == 1);
    CHECK(summary["cardinality"] == 1296);
    const auto tj = json::parse(io::read_file(trace1));
    CHECK(tj["config"]["seed"] == 1);
    CHECK(tj["stages"].size() == 4);

    const auto v1 = run({"verify", "--in", set1, "--fejer-k", "auto", "--beta", "0.7"});
    const auto v2 = run({"verify", "--in", set1, "--fejer-k", "auto", "--beta", "0.7"});
    REQUIRE(v1.code == 0);
    CHECK(v1.out == v2.out);
    const auto rep = json::parse(v1.out);
    CHECK(rep["genuineAgrees"] == true);
    CHECK(rep["progressionFound"] == true);
    CHECK(rep["lambda3Terms"].size() == 8);
    CHECK(rep["fejer"]["K"] == 16);

    CHECK(run({"verify", "--in", set1, "--no-oddify"}).code == 1);
}

TEST_CASE("other subcommands") {
    const auto full = scratch("full.set");
    REQUIRE(run({"construct", "--kind", "full", "--ambient", "64", "--out", full}).code == 0);
    const auto g = run({"guarantee", "--in", full, "--epsilon", "0.1"});
    REQUIRE(g.code == 0);
    CHECK(json::parse(g.out)["guarantee"]["conclusion"] == "guaranteed");

    const auto csv = run({"spectrum", "--in", full, "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("k,re,im,abs\n0,1,0,1\n", 0) == 0);

    const auto c3 = scratch("c3.set");
    REQUIRE(run({"construct", "--kind", "cantor", "--depth", "5", "--out", c3}).code == 0);
    const auto d = run({"decay", "--in", c3, "--beta", "0.5"});
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["violations"].empty());
    CHECK(run({"smear", "--in", c3}).code == 0);

    const auto pts = scratch("pts.txt");
    io::write_file(pts, "0\n0.5\n1\n");
    const auto emb = scratch("emb.set");
    REQUIRE(run({"construct", "--kind", "points", "--points", pts, "--target", "10", "--out", emb}).code == 0);
    CHECK(io::read_set(emb) == DiscreteSet(10, {0, 4, 9}));
}

TEST_CASE("exit status contract") {
    const auto c2 = scratch("c2b.set");
    REQUIRE(run({"construct", "--kind", "cantor", "--depth", "2", "--out", c2}).code == 0);
    CHECK(run({"count-aps", "--in", scratch("missing.set")}).code == 2);
    const auto bad = scratch("bad.set");
    io::write_file(bad, "N 5\n7\n");
    CHECK(run({"count-aps", "--in", bad}).code == 2);
    CHECK(run({"count-aps", "--in", c2, "--bogus"}).code == 1);
    CHECK(run({"count-aps", "--in", c2, "--method", "spectral"}).code == 1);
    CHECK(run({"count-aps", "--in", c2, "--method", "spectral", "--oddify"}).code == 0);
    CHECK(run({"construct", "--kind", "cantor", "--depth", "40", "--out", scratch("big.set")}).code == 1);
    CHECK(run({"construct", "--kind", "salem", "--branching", "8", "--keep", "6", "--depth", "3",
               "--verify-blocks", "--eta", "0", "--out", scratch("never.set")})
              .code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    const auto r = run({"decay", "--in", c2, "--k-min", "0"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("config file supplies defaults and flags win") {
    const auto cfg = scratch("run.cfg");
    const auto out_cfg = scratch("from_cfg.set");
    io::write_file(cfg, "# construct defaults\nkind = cantor\ndepth=3\nout=" + out_cfg + "\n");
    REQUIRE(run({"construct", "--config", cfg}).code == 0);
    CHECK(io::read_set(out_cfg).cardinality() == 8);

    REQUIRE(run({"construct", "--config", cfg, "--depth", "2"}).code == 0);
    CHECK(io::read_set(out_cfg) == DiscreteSet(10, {1, 3, 7, 9}));

    io::write_file(cfg, "nonsense-key=1\n");
    CHECK(run({"construct", "--config", cfg}).code == 1);
    CHECK(run({"construct", "--config", scratch("no_such.cfg")}).code == 2);
}
