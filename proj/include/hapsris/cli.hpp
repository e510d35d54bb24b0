#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hapsris/follower.hpp"
#include "hapsris/leader.hpp"

namespace hapsris {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInfeasible = 2;

nlohmann::json to_json(const RisAllocation& allocation);
nlohmann::json to_json(const LeaderSolution& solution, std::size_t user_count,
                       bool with_allocation);
nlohmann::json to_json(const FollowerSolution& solution);

/// Entry point behind the `hapsris` binary; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hapsris
