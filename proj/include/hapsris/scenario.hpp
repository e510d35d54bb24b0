#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "hapsris/geometry.hpp"
#include "hapsris/linkbudget.hpp"

namespace hapsris {

struct RisParams {
    std::size_t element_count = 350'000;
    double mu = 1.0;
};

enum class InitialUavPolicy {
    /// N(0) = min(|B|, L^UAV).
    users_capped_by_band,
    /// N(0) = min(initial_count, |B|).
    fixed,
};

struct UavParams {
    double altitude_m = 100.0;
    InitialUavPolicy initial_count_policy = InitialUavPolicy::users_capped_by_band;
    std::size_t initial_count = 0;
};

struct LeaderParams {
    double delta_m = 50.0;
    /// 0 means ceil(R0 / delta).
    std::size_t max_iters = 0;
};

struct FollowerParams {
    std::size_t kmeans_restarts = 10;
    std::size_t kmeans_max_iters = 100;
    std::size_t delta_prime = 1;
};

/// Full input record. Defaults reproduce the reference setup: 20 users in a
/// 500 m disc, CS at (-10 km, 0, 1 km), HAPS at (-5 km, 100 m, 20 km),
/// 2 GHz / 100 MHz / 64 subcarriers, 40 dBm CS, 20 dBm per UAV.
struct Scenario {
    CoverageRegion region;
    std::size_t user_count = 20;
    Position3 cs_position{-10'000.0, 0.0, 1'000.0};
    Position3 haps_position{-5'000.0, 100.0, 20'000.0};
    RadioParams radio;
    AtgParams atg;
    RisParams ris;
    double rate_target_bps = 64'000.0;
    UavParams uav;
    LeaderParams leader;
    FollowerParams follower;
    std::uint64_t seed = 1;

    /// T, with the 0 = automatic rule resolved.
    std::size_t leader_iterations() const;
};

/// Throws ConfigError naming the first offending field.
void validate(const Scenario& scenario);

/// Parses TOML text. Missing keys keep their defaults; unknown keys are
/// rejected. Throws ConfigError (with line/column for syntax errors).
Scenario parse_scenario(std::string_view text, std::string_view source_name = "<string>");

Scenario load_scenario(const std::filesystem::path& path);

/// Canonical TOML rendering: fixed section/key order, shortest round-trip
/// number formatting. parse_scenario(dump_scenario(s)) reproduces s exactly.
std::string dump_scenario(const Scenario& scenario);

}  // namespace hapsris
