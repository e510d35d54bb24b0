#pragma once

#include <cstddef>
#include <vector>

#include "hapsris/geometry.hpp"

namespace hapsris {

/// A concrete UAV placement for the users of the UAV zone.
///
/// Users are addressed by their local index into `users` / `user_positions`;
/// `users` holds the matching global indices into the scenario's user list.
/// `subcarriers[i]` lists the UAV-band subcarriers (0-based, < L^UAV) that
/// user i receives from UAV `association[i]`.
struct UavDeployment {
    std::vector<Position3> uav_positions;
    std::vector<std::size_t> users;
    std::vector<Position3> user_positions;
    std::vector<std::size_t> association;
    std::vector<std::vector<int>> subcarriers;

    std::size_t uav_count() const { return uav_positions.size(); }
    std::size_t user_count() const { return users.size(); }
};

}  // namespace hapsris
