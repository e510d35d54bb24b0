#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hapsris {

/// Cartesian position in meters; the ground plane is z = 0.
struct Position3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position3&, const Position3&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

bool is_finite(const Position3& p);

double distance(const Position3& a, const Position3& b);

/// Distance in the (x, y) plane, ignoring altitude.
double horizontal_distance(const Position3& a, const Position3& b);

/// Circular service area on the ground.
struct CoverageRegion {
    Position3 center;
    double radius_m = 500.0;
};

/// The disc split at `boundary_m`: users within the boundary (inclusive)
/// form the UAV zone, everyone else the HAPS-RIS ring. Indices refer to the
/// user list the partition was computed from and are kept ascending.
struct ZonePartition {
    double boundary_m = 0.0;
    std::vector<std::size_t> uav_zone_users;
    std::vector<std::size_t> haps_zone_users;
};

/// Area-uniform user drop inside the region (square-root radial transform),
/// all at z = 0. Deterministic for a given seed.
std::vector<Position3> place_users(std::uint64_t seed, std::size_t count,
                                   const CoverageRegion& region);

/// Throws ParameterError when boundary_m lies outside [0, R0].
ZonePartition partition_zones(std::span<const Position3> users, const CoverageRegion& region,
                              double boundary_m);

}  // namespace hapsris
