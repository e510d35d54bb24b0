#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hapsris/deployment.hpp"
#include "hapsris/geometry.hpp"
#include "hapsris/leader.hpp"
#include "hapsris/scenario.hpp"

namespace hapsris {

struct KMeansOptions {
    std::size_t restarts = 10;
    std::size_t max_iters = 100;
};

struct KMeansResult {
    std::vector<Point2> centroids;
    std::vector<std::size_t> assignment;
    double wcss = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

double within_cluster_sum_of_squares(std::span<const Point2> points,
                                     std::span<const Point2> centroids,
                                     std::span<const std::size_t> assignment);

/// Lloyd's algorithm with k-means++ seeding; keeps the restart with the
/// lowest WCSS. A cluster that empties is re-seeded at the point farthest
/// from its current centroid. Throws ParameterError unless 1 <= k <= |points|.
KMeansResult kmeans_cluster(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                            KMeansOptions options = {});

struct SubcarrierPlan {
    std::vector<std::vector<int>> per_user;
    /// False when some UAV has more users than subcarriers.
    bool feasible = true;
};

/// Each UAV splits the band evenly between its users: floor(L / n) subcarriers
/// each, dealt round-robin from index 0 in ascending user order. Every UAV
/// starts from index 0, so neighbours reuse the same subcarriers.
SubcarrierPlan assign_subcarriers(std::span<const std::size_t> association,
                                  std::size_t uav_count, int uav_subcarriers);

struct FeasibilityCheck {
    bool feasible = false;
    UavDeployment deployment;
    std::vector<double> rates;
    bool subcarriers_feasible = true;
};

/// Places `uav_count` UAVs over the UAV-zone users (k-means centroids at
/// the configured altitude), deals subcarriers and evaluates every user's
/// rate with co-channel interference from the other UAVs.
FeasibilityCheck check_feasible(std::size_t uav_count, std::span<const std::size_t> uav_zone_users,
                                std::span<const Position3> users, const Scenario& scenario,
                                std::uint64_t seed);

struct FollowerStep {
    std::size_t uav_count = 0;
    bool feasible = false;
};

struct FollowerSolution {
    std::size_t uav_count = 0;
    UavDeployment deployment;
    std::vector<UserRate> per_user_rate;
    bool feasible = true;
    std::size_t initial_count = 0;
    std::vector<FollowerStep> trace;
};

/// N(0) from the scenario's policy.
std::size_t initial_uav_count(const Scenario& scenario, std::size_t uav_zone_size);

/// Walks N down from N(0) by delta' and returns the last feasible count
/// before the first failure. When N(0) itself fails the solution is marked
/// infeasible and carries the N(0) deployment.
FollowerSolution solve_follower(const Scenario& scenario, const LeaderSolution& leader,
                                std::span<const Position3> users);

}  // namespace hapsris
