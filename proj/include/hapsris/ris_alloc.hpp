#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hapsris/linkbudget.hpp"

namespace hapsris {

/// The RIS cluster and CS subcarriers granted to one HAPS-zone user.
/// Cluster `cluster` owns elements [first_element, first_element + cluster_size);
/// `groups` splits it into one element subgroup per granted subcarrier.
struct UserAllocation {
    std::size_t user = 0;
    std::size_t cluster = 0;
    std::size_t first_element = 0;
    std::size_t cluster_size = 0;
    std::vector<SubcarrierGroup> groups;
};

struct RisAllocation {
    std::vector<UserAllocation> users;
    std::size_t elements_per_cluster = 0;
    std::size_t subcarriers_per_user = 0;
    std::size_t elements_per_subcarrier = 0;
    std::size_t idle_elements = 0;
    std::size_t idle_subcarriers = 0;
    /// False when some user ends up with no element or no subcarrier
    /// (M < |C| or L^CS < |C|).
    bool feasible = true;

    bool empty() const { return users.empty(); }
    const UserAllocation* find(std::size_t user) const;
};

/// Builds the HAPS-zone resource map with strict floors:
///   cluster size      floor(M / |C|)
///   subcarriers/user  floor(L^CS / |C|)
///   subgroup size     floor(cluster / subcarriers-per-user)
/// Users are matched to clusters through a seeded uniform random injection;
/// cluster c owns subcarriers [c * Lc, (c + 1) * Lc). Remainders stay idle.
/// An empty zone gives an empty, feasible allocation.
RisAllocation build_allocation(std::span<const std::size_t> haps_zone_users,
                               std::size_t element_count, int cs_subcarriers,
                               std::uint64_t seed);

}  // namespace hapsris
