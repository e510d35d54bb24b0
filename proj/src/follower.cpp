#include "hapsris/follower.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "hapsris/errors.hpp"
#include "hapsris/linkbudget.hpp"
#include "hapsris/rng.hpp"

namespace hapsris {

namespace {

double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::vector<Point2> plus_plus_seeds(std::span<const Point2> points, std::size_t k, Rng& rng) {
    std::vector<Point2> centroids;
    centroids.reserve(k);
    centroids.push_back(points[rng.below(points.size())]);

    std::vector<double> d2(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) d2[i] = squared_distance(points[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick = 0;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            pick = points.size() - 1;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (d2[i] <= 0.0) continue;
                if (target < d2[i]) {
                    pick = i;
                    break;
                }
                target -= d2[i];
            }
        } else {
            pick = rng.below(points.size());
        }
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < points.size(); ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

std::vector<std::size_t> nearest(std::span<const Point2> points, std::span<const Point2> centroids) {
    std::vector<std::size_t> assignment(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centroids.size(); ++j) {
            const double d = squared_distance(points[i], centroids[j]);
            if (d < best) {
                best = d;
                assignment[i] = j;
            }
        }
    }
    return assignment;
}

void update_centroids(std::span<const Point2> points, std::span<const std::size_t> assignment,
                      std::vector<Point2>& centroids) {
    const std::size_t k = centroids.size();
    std::vector<Point2> sum(k);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sum[assignment[i]].x += points[i].x;
        sum[assignment[i]].y += points[i].y;
        ++count[assignment[i]];
    }
    // Distance of each point to the centroid it currently belongs to; used to
    // re-seed empty clusters at the worst-served point.
    std::vector<double> spread(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        spread[i] = squared_distance(points[i], centroids[assignment[i]]);
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (count[j] > 0) {
            centroids[j] = {sum[j].x / static_cast<double>(count[j]),
                            sum[j].y / static_cast<double>(count[j])};
            continue;
        }
        const auto far = static_cast<std::size_t>(
            std::max_element(spread.begin(), spread.end()) - spread.begin());
        centroids[j] = points[far];
        spread[far] = -1.0;
    }
}

KMeansResult lloyd(std::span<const Point2> points, std::size_t k, Rng& rng,
                   std::size_t max_iters) {
    KMeansResult run;
    run.centroids = plus_plus_seeds(points, k, rng);
    run.assignment = nearest(points, run.centroids);
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        run.iterations = iter;
        update_centroids(points, run.assignment, run.centroids);
        auto next = nearest(points, run.centroids);
        if (next == run.assignment) {
            run.converged = true;
            break;
        }
        run.assignment = std::move(next);
    }
    run.wcss = within_cluster_sum_of_squares(points, run.centroids, run.assignment);
    return run;
}

}  // namespace

double within_cluster_sum_of_squares(std::span<const Point2> points,
                                     std::span<const Point2> centroids,
                                     std::span<const std::size_t> assignment) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += squared_distance(points[i], centroids[assignment[i]]);
    }
    return total;
}

KMeansResult kmeans_cluster(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                            KMeansOptions options) {
    if (k == 0 || k > points.size()) {
        throw ParameterError("k-means needs 1 <= k <= " + std::to_string(points.size()) +
                             ", got k = " + std::to_string(k));
    }
    KMeansResult best;
    best.wcss = std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, SeedStream::kmeans, r));
        auto run = lloyd(points, k, rng, options.max_iters);
        if (run.wcss < best.wcss) best = std::move(run);
    }
    return best;
}

SubcarrierPlan assign_subcarriers(std::span<const std::size_t> association,
                                  std::size_t uav_count, int uav_subcarriers) {
    SubcarrierPlan plan;
    plan.per_user.resize(association.size());
    std::vector<std::vector<std::size_t>> members(uav_count);
    for (std::size_t i = 0; i < association.size(); ++i) {
        if (association[i] >= uav_count) {
            throw ContractViolation("user associated with a nonexistent UAV");
        }
        members[association[i]].push_back(i);
    }
    const auto band = static_cast<std::size_t>(std::max(uav_subcarriers, 0));
    for (const auto& cluster : members) {
        if (cluster.empty()) continue;
        const std::size_t n = cluster.size();
        if (n > band) {
            plan.feasible = false;
            continue;
        }
        const std::size_t per_user = band / n;
        for (std::size_t s = 0; s < n * per_user; ++s) {
            plan.per_user[cluster[s % n]].push_back(static_cast<int>(s));
        }
    }
    return plan;
}

FeasibilityCheck check_feasible(std::size_t uav_count, std::span<const std::size_t> uav_zone_users,
                                std::span<const Position3> users, const Scenario& scenario,
                                std::uint64_t seed) {
    FeasibilityCheck check;
    auto& dep = check.deployment;
    if (uav_zone_users.empty()) {
        check.feasible = true;
        return check;
    }
    if (uav_count == 0) return check;

    std::vector<Point2> points;
    points.reserve(uav_zone_users.size());
    for (std::size_t id : uav_zone_users) {
        dep.users.push_back(id);
        dep.user_positions.push_back(users[id]);
        points.push_back({users[id].x, users[id].y});
    }

    const auto clusters = kmeans_cluster(
        points, uav_count, seed,
        {scenario.follower.kmeans_restarts, scenario.follower.kmeans_max_iters});
    for (const auto& c : clusters.centroids) {
        dep.uav_positions.push_back({c.x, c.y, scenario.uav.altitude_m});
    }
    dep.association = clusters.assignment;

    auto plan = assign_subcarriers(dep.association, uav_count, scenario.radio.uav_subcarriers());
    dep.subcarriers = std::move(plan.per_user);
    check.subcarriers_feasible = plan.feasible;

    check.rates = UavLinkEvaluator(dep, scenario.radio, scenario.atg).rates();
    check.feasible = plan.feasible &&
                     std::all_of(check.rates.begin(), check.rates.end(),
                                 [&](double r) { return r >= scenario.rate_target_bps; });
    return check;
}

std::size_t initial_uav_count(const Scenario& scenario, std::size_t uav_zone_size) {
    if (scenario.uav.initial_count_policy == InitialUavPolicy::fixed) {
        return std::min(scenario.uav.initial_count, uav_zone_size);
    }
    return std::min(uav_zone_size, static_cast<std::size_t>(scenario.radio.uav_subcarriers()));
}

FollowerSolution solve_follower(const Scenario& scenario, const LeaderSolution& leader,
                                std::span<const Position3> users) {
    FollowerSolution solution;
    const auto& zone = leader.partition.uav_zone_users;
    if (zone.empty()) return solution;

    auto to_user_rates = [&](const FeasibilityCheck& check) {
        std::vector<UserRate> out;
        for (std::size_t i = 0; i < check.rates.size(); ++i) {
            out.push_back({check.deployment.users[i], check.rates[i]});
        }
        return out;
    };

    const std::size_t start = initial_uav_count(scenario, zone.size());
    const std::size_t step = scenario.follower.delta_prime;
    solution.initial_count = start;
    bool found = false;
    for (std::size_t n = start; n >= 1; n = n > step ? n - step : 0) {
        auto check = check_feasible(n, zone, users, scenario,
                                    derive_seed(scenario.seed, SeedStream::kmeans, n));
        solution.trace.push_back({n, check.feasible});
        if (!check.feasible) {
            if (!found) {
                solution.feasible = false;
                solution.uav_count = n;
                solution.per_user_rate = to_user_rates(check);
                solution.deployment = std::move(check.deployment);
            }
            break;
        }
        found = true;
        solution.feasible = true;
        solution.uav_count = n;
        solution.per_user_rate = to_user_rates(check);
        solution.deployment = std::move(check.deployment);
    }
    return solution;
}

}  // namespace hapsris
