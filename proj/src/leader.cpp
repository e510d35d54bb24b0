#include "hapsris/leader.hpp"

#include <algorithm>

#include "hapsris/errors.hpp"
#include "hapsris/linkbudget.hpp"
#include "hapsris/rng.hpp"

namespace hapsris {

std::vector<Position3> scenario_users(const Scenario& scenario) {
    return place_users(derive_seed(scenario.seed, SeedStream::users, 0), scenario.user_count,
                       scenario.region);
}

std::vector<UserRate> haps_zone_rates(const Scenario& scenario, std::span<const Position3> users,
                                      const RisAllocation& allocation) {
    const double power_w = scenario.radio.cs_subcarrier_power_w();
    std::vector<UserRate> rates;
    rates.reserve(allocation.users.size());
    for (const auto& ua : allocation.users) {
        const LinkGain gain = cascade_amplitude(users[ua.user], scenario.cs_position,
                                                scenario.haps_position, scenario.radio);
        rates.push_back({ua.user, haps_user_rate(ua.groups, gain, scenario.ris.mu, power_w,
                                                 scenario.radio)});
    }
    std::sort(rates.begin(), rates.end(),
              [](const UserRate& a, const UserRate& b) { return a.user < b.user; });
    return rates;
}

namespace {

struct StepOutcome {
    bool feasible = false;
    ZonePartition partition;
    RisAllocation allocation;
    std::vector<UserRate> rates;
};

StepOutcome evaluate_step(const Scenario& scenario, std::span<const Position3> users,
                          double boundary_m, std::size_t step) {
    StepOutcome out;
    out.partition = partition_zones(users, scenario.region, boundary_m);
    out.allocation = build_allocation(out.partition.haps_zone_users, scenario.ris.element_count,
                                      scenario.radio.cs_subcarriers(),
                                      derive_seed(scenario.seed, SeedStream::ris_allocation, step));
    out.rates = haps_zone_rates(scenario, users, out.allocation);
    out.feasible = out.allocation.feasible &&
                   std::all_of(out.rates.begin(), out.rates.end(), [&](const UserRate& r) {
                       return r.rate_bps >= scenario.rate_target_bps;
                   });
    return out;
}

}  // namespace

LeaderSolution solve_leader(const Scenario& scenario, std::span<const Position3> users) {
    const double r0 = scenario.region.radius_m;
    const double delta = scenario.leader.delta_m;
    const std::size_t max_iters = scenario.leader_iterations();

    LeaderSolution best;
    best.boundary_m = r0;
    best.partition = partition_zones(users, scenario.region, r0);
    best.allocation.idle_elements = scenario.ris.element_count;
    best.allocation.idle_subcarriers = static_cast<std::size_t>(scenario.radio.cs_subcarriers());

    for (std::size_t t = 1; t <= max_iters; ++t) {
        const double boundary = std::max(0.0, r0 - static_cast<double>(t) * delta);
        best.iterations_used = t;
        StepOutcome step = evaluate_step(scenario, users, boundary, t);
        if (!step.feasible) break;
        best.boundary_m = boundary;
        best.partition = std::move(step.partition);
        best.allocation = std::move(step.allocation);
        best.per_user_rate = std::move(step.rates);
        if (boundary == 0.0) break;
    }
    best.covered_count = best.partition.haps_zone_users.size();
    return best;
}

LeaderSolution solve_leader(const Scenario& scenario) {
    return solve_leader(scenario, scenario_users(scenario));
}

double haps_only_coverage(const Scenario& scenario, std::span<const Position3> users) {
    if (users.empty()) return 0.0;
    const auto solution = solve_leader(scenario, users);
    return static_cast<double>(solution.covered_count) / static_cast<double>(users.size());
}

double haps_only_coverage(const Scenario& scenario) {
    return haps_only_coverage(scenario, scenario_users(scenario));
}

ElementSearchResult min_elements_for_full_coverage(const Scenario& scenario,
                                                   std::span<const Position3> users,
                                                   double rate_target_bps,
                                                   ElementSearchOptions options) {
    if (!(rate_target_bps > 0.0)) throw ParameterError("rate target must be > 0");
    Scenario probe = scenario;
    probe.rate_target_bps = rate_target_bps;

    ElementSearchResult result;
    auto full_coverage = [&](std::size_t m) {
        probe.ris.element_count = m;
        ++result.evaluations;
        return solve_leader(probe, users).boundary_m == 0.0;
    };

    std::size_t hi = std::max<std::size_t>(users.size(), 1);
    std::size_t lo = 0;  // largest count known to fail (0 always fails for users > 0)
    while (!full_coverage(hi)) {
        if (hi >= options.cap) return result;
        lo = hi;
        hi = std::min(hi * 2, options.cap);
    }
    for (std::size_t step = 0; step < options.bisection_steps && hi - lo > 1; ++step) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (full_coverage(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.element_count = hi;
    return result;
}

ElementSearchResult min_elements_for_full_coverage(const Scenario& scenario,
                                                   double rate_target_bps,
                                                   ElementSearchOptions options) {
    return min_elements_for_full_coverage(scenario, scenario_users(scenario), rate_target_bps,
                                          options);
}

}  // namespace hapsris
