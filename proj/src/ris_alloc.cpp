#include "hapsris/ris_alloc.hpp"

#include <numeric>
#include <utility>

#include "hapsris/errors.hpp"
#include "hapsris/rng.hpp"

namespace hapsris {

const UserAllocation* RisAllocation::find(std::size_t user) const {
    for (const auto& u : users) {
        if (u.user == user) return &u;
    }
    return nullptr;
}

RisAllocation build_allocation(std::span<const std::size_t> haps_zone_users,
                               std::size_t element_count, int cs_subcarriers,
                               std::uint64_t seed) {
    if (cs_subcarriers < 0) throw ParameterError("negative CS subcarrier count");
    const auto band = static_cast<std::size_t>(cs_subcarriers);

    RisAllocation alloc;
    const std::size_t n = haps_zone_users.size();
    if (n == 0) {
        alloc.idle_elements = element_count;
        alloc.idle_subcarriers = band;
        return alloc;
    }

    alloc.elements_per_cluster = element_count / n;
    alloc.subcarriers_per_user = band / n;
    alloc.elements_per_subcarrier = alloc.subcarriers_per_user == 0
                                        ? 0
                                        : alloc.elements_per_cluster / alloc.subcarriers_per_user;
    alloc.idle_elements = element_count - n * alloc.elements_per_subcarrier *
                                              alloc.subcarriers_per_user;
    alloc.idle_subcarriers = band - n * alloc.subcarriers_per_user;
    alloc.feasible = alloc.elements_per_cluster > 0 && alloc.subcarriers_per_user > 0;

    // Fisher-Yates over cluster ids gives the random injection user -> cluster.
    std::vector<std::size_t> cluster_of(n);
    std::iota(cluster_of.begin(), cluster_of.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(cluster_of[i], cluster_of[rng.below(i + 1)]);
    }

    alloc.users.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        UserAllocation ua;
        ua.user = haps_zone_users[k];
        ua.cluster = cluster_of[k];
        ua.cluster_size = alloc.elements_per_cluster;
        ua.first_element = ua.cluster * alloc.elements_per_cluster;
        for (std::size_t q = 0; q < alloc.subcarriers_per_user; ++q) {
            SubcarrierGroup g;
            g.subcarrier = static_cast<int>(ua.cluster * alloc.subcarriers_per_user + q);
            g.first_element = ua.first_element + q * alloc.elements_per_subcarrier;
            g.element_count = alloc.elements_per_subcarrier;
            ua.groups.push_back(g);
        }
        alloc.users.push_back(std::move(ua));
    }
    return alloc;
}

}  // namespace hapsris
