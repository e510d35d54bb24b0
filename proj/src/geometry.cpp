#include "hapsris/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hapsris/errors.hpp"
#include "hapsris/rng.hpp"

namespace hapsris {

bool is_finite(const Position3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

double distance(const Position3& a, const Position3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double horizontal_distance(const Position3& a, const Position3& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<Position3> place_users(std::uint64_t seed, std::size_t count,
                                   const CoverageRegion& region) {
    Rng rng(seed);
    std::vector<Position3> users;
    users.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double radius = region.radius_m * std::sqrt(rng.uniform());
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        users.push_back({region.center.x + radius * std::cos(angle),
                         region.center.y + radius * std::sin(angle), 0.0});
    }
    return users;
}

ZonePartition partition_zones(std::span<const Position3> users, const CoverageRegion& region,
                              double boundary_m) {
    if (!(boundary_m >= 0.0 && boundary_m <= region.radius_m)) {
        throw ParameterError("zone boundary " + std::to_string(boundary_m) +
                             " m outside [0, " + std::to_string(region.radius_m) + "]");
    }
    ZonePartition partition;
    partition.boundary_m = boundary_m;
    for (std::size_t i = 0; i < users.size(); ++i) {
        if (horizontal_distance(users[i], region.center) <= boundary_m) {
            partition.uav_zone_users.push_back(i);
        } else {
            partition.haps_zone_users.push_back(i);
        }
    }
    return partition;
}

}  // namespace hapsris
