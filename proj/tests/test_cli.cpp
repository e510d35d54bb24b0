#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hapsris/cli.hpp"

using namespace hapsris;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& file, const std::string& text) const {
        std::ofstream(path / file) << text;
        return (path / file).string();
    }
};

}  // namespace

TEST_CASE("plan --json carries both solutions") {
    const auto r = cli({"plan", "--seed", "7", "--json"});
    CHECK(r.code == kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["seed"] == 7);
    const auto& leader = doc["leader"];
    for (const char* key : {"R_star", "covered_count", "coverage_fraction", "iterations_used",
                            "haps_zone_users", "uav_zone_users", "per_user_rate"}) {
        CHECK_MESSAGE(leader.contains(key), key);
    }
    CHECK_FALSE(leader.contains("allocation"));
    const auto& follower = doc["follower"];
    for (const char* key : {"N_star", "feasible", "initial_count", "uav_positions", "association",
                            "subcarrier_assignment", "per_user_rate", "trace"}) {
        CHECK_MESSAGE(follower.contains(key), key);
    }
    CHECK(leader["haps_zone_users"].size() + leader["uav_zone_users"].size() == 20);
    CHECK(follower["uav_positions"].size() == follower["N_star"].get<std::size_t>());
}

TEST_CASE("leader output is deterministic") {
    TempDir dir("hapsris_cli_det");
    const auto cfg = dir.write("base.toml", "seed = 3\n[ris]\nelement_count = 9000\n");
    const auto a = cli({"leader", "--config", cfg});
    const auto b = cli({"leader", "--config", cfg});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("R* = ") != std::string::npos);
}

TEST_CASE("--dump-allocation adds the RIS map") {
    const auto r = cli({"leader", "--json", "--dump-allocation"});
    const auto doc = json::parse(r.out);
    const auto& alloc = doc["leader"]["allocation"];
    for (const char* key : {"feasible", "elements_per_cluster", "subcarriers_per_user",
                            "elements_per_subcarrier", "idle_elements", "idle_subcarriers",
                            "users"}) {
        CHECK_MESSAGE(alloc.contains(key), key);
    }
}

TEST_CASE("validation errors exit with 1") {
    TempDir dir("hapsris_cli_bad");
    const auto bad = dir.write("bad.toml", "[ris]\nelement_count = -1\n");
    const auto r = cli({"plan", "--config", bad});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("ris.element_count") != std::string::npos);
    CHECK(r.out.empty());

    const auto syntax = dir.write("syntax.toml", "[ris\n");
    CHECK(cli({"plan", "--config", syntax}).code == kExitValidation);
    CHECK(cli({"plan", "--config", (dir.path / "none.toml").string()}).code == kExitValidation);
}

TEST_CASE("unknown flag prints usage and exits 1") {
    const auto r = cli({"plan", "--frobnicate"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == kExitValidation);
    CHECK(cli({"sweep", "fig9"}).code == kExitValidation);
}

TEST_CASE("infeasible follower exits with 2 and keeps diagnostics") {
    TempDir dir("hapsris_cli_inf");
    const auto cfg = dir.write("inf.toml", "rate_target_bps = 1e12\n");
    const auto r = cli({"follower", "--config", cfg, "--json"});
    CHECK(r.code == kExitInfeasible);
    const auto doc = json::parse(r.out);
    CHECK(doc["follower"]["feasible"] == false);
    CHECK(doc["follower"]["N_star"] == doc["follower"]["initial_count"]);
}

TEST_CASE("sweep writes only the figure CSV under --out") {
    TempDir dir("hapsris_cli_sweep");
    const auto cfg = dir.write("tiny.toml", "user_count = 6\n");
    const auto out = dir.path / "results";
    const auto r = cli({"sweep", "fig5", "--config", cfg, "--runs", "2", "--out", out.string(),
                        "--workers", "1"});
    REQUIRE(r.code == kExitOk);
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(out)) {
        files.push_back(e.path().filename().string());
    }
    CHECK(files == std::vector<std::string>{"fig5_N_vs_M.csv"});

    std::ifstream f(out / "fig5_N_vs_M.csv");
    std::string header, row;
    std::getline(f, header);
    CHECK(header == "sweep,metric,grid_value,rate_target_bps,mean,std,runs,seed");
    std::size_t rows = 0;
    while (std::getline(f, row)) {
        CHECK(row.rfind("fig5,uav_count,", 0) == 0);
        ++rows;
    }
    CHECK(rows == 27);
}

TEST_CASE("sweep without --out streams CSV on stdout") {
    const auto r = cli({"sweep", "fig3", "--runs", "1", "--workers", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("sweep,metric,grid_value,rate_target_bps,mean,std,runs,seed\n", 0) == 0);
}

TEST_CASE("config prints canonical TOML") {
    const auto r = cli({"config", "--seed", "12"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("seed = 12\n") != std::string::npos);
    CHECK(r.out.find("[follower]") != std::string::npos);
}
