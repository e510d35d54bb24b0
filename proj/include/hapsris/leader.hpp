#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hapsris/geometry.hpp"
#include "hapsris/ris_alloc.hpp"
#include "hapsris/scenario.hpp"

namespace hapsris {

struct UserRate {
    std::size_t user = 0;
    double rate_bps = 0.0;

    friend bool operator==(const UserRate&, const UserRate&) = default;
};

/// Zone boundary chosen by the leader and the HAPS-RIS service that goes
/// with it. Every user in `partition.haps_zone_users` meets the rate target.
struct LeaderSolution {
    double boundary_m = 0.0;
    ZonePartition partition;
    RisAllocation allocation;
    std::vector<UserRate> per_user_rate;
    std::size_t covered_count = 0;
    std::size_t iterations_used = 0;
};

/// Rates of every HAPS-zone user under `allocation` (phase-aligned RIS,
/// uniform CS power over the CS half-band).
std::vector<UserRate> haps_zone_rates(const Scenario& scenario, std::span<const Position3> users,
                                      const RisAllocation& allocation);

/// Shrinks the boundary from R0 in steps of delta, rebuilding the RIS
/// allocation at each step, and keeps the last boundary at which every ring
/// user meets the rate target. Stops at the first infeasible step or at
/// R = 0 (the last step is clamped to 0 when R0 is not a multiple of delta).
LeaderSolution solve_leader(const Scenario& scenario, std::span<const Position3> users);

/// Same, on the layout drawn from scenario.seed.
LeaderSolution solve_leader(const Scenario& scenario);

/// Users served by HAPS-RIS divided by all users; the UAV zone counts as outage.
double haps_only_coverage(const Scenario& scenario, std::span<const Position3> users);
double haps_only_coverage(const Scenario& scenario);

struct ElementSearchOptions {
    std::size_t cap = 1'000'000'000;
    std::size_t bisection_steps = 20;
};

struct ElementSearchResult {
    /// Smallest element count found that gives full HAPS-RIS coverage.
    /// Empty when even `cap` elements do not.
    std::optional<std::size_t> element_count;
    std::size_t evaluations = 0;
};

/// Doubles M from the user count until the leader reaches R* = 0, then
/// bisects between the last failing and first passing counts.
ElementSearchResult min_elements_for_full_coverage(const Scenario& scenario,
                                                   std::span<const Position3> users,
                                                   double rate_target_bps,
                                                   ElementSearchOptions options = {});

/// Layout drawn from scenario.seed.
ElementSearchResult min_elements_for_full_coverage(const Scenario& scenario,
                                                   double rate_target_bps,
                                                   ElementSearchOptions options = {});

/// The user layout a scenario's seed produces.
std::vector<Position3> scenario_users(const Scenario& scenario);

}  // namespace hapsris
