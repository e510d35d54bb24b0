#include "hapsris/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hapsris/errors.hpp"
#include "hapsris/experiments.hpp"
#include "hapsris/scenario.hpp"

namespace hapsris {

using nlohmann::json;

json to_json(const RisAllocation& allocation) {
    json users = json::array();
    for (const auto& u : allocation.users) {
        json groups = json::array();
        for (const auto& g : u.groups) {
            groups.push_back({{"subcarrier", g.subcarrier},
                              {"first_element", g.first_element},
                              {"element_count", g.element_count}});
        }
        users.push_back({{"user", u.user},
                         {"cluster", u.cluster},
                         {"first_element", u.first_element},
                         {"cluster_size", u.cluster_size},
                         {"groups", std::move(groups)}});
    }
    return {{"feasible", allocation.feasible},
            {"elements_per_cluster", allocation.elements_per_cluster},
            {"subcarriers_per_user", allocation.subcarriers_per_user},
            {"elements_per_subcarrier", allocation.elements_per_subcarrier},
            {"idle_elements", allocation.idle_elements},
            {"idle_subcarriers", allocation.idle_subcarriers},
            {"users", std::move(users)}};
}

namespace {

json rates_json(const std::vector<UserRate>& rates) {
    json out = json::array();
    for (const auto& r : rates) out.push_back({{"user", r.user}, {"rate_bps", r.rate_bps}});
    return out;
}

}  // namespace

json to_json(const LeaderSolution& s, std::size_t user_count, bool with_allocation) {
    json j = {{"R_star", s.boundary_m},
              {"covered_count", s.covered_count},
              {"coverage_fraction",
               user_count == 0 ? 0.0
                               : static_cast<double>(s.covered_count) /
                                     static_cast<double>(user_count)},
              {"iterations_used", s.iterations_used},
              {"haps_zone_users", s.partition.haps_zone_users},
              {"uav_zone_users", s.partition.uav_zone_users},
              {"per_user_rate", rates_json(s.per_user_rate)}};
    if (with_allocation) j["allocation"] = to_json(s.allocation);
    return j;
}

json to_json(const FollowerSolution& s) {
    const auto& d = s.deployment;
    json positions = json::array();
    for (const auto& p : d.uav_positions) positions.push_back({{"x", p.x}, {"y", p.y}, {"z", p.z}});
    json association = json::array();
    json subcarriers = json::array();
    for (std::size_t i = 0; i < d.user_count(); ++i) {
        association.push_back({{"user", d.users[i]}, {"uav", d.association[i]}});
        subcarriers.push_back({{"user", d.users[i]}, {"subcarriers", d.subcarriers[i]}});
    }
    json trace = json::array();
    for (const auto& t : s.trace) trace.push_back({{"uav_count", t.uav_count}, {"feasible", t.feasible}});
    return {{"N_star", s.uav_count},
            {"feasible", s.feasible},
            {"initial_count", s.initial_count},
            {"uav_positions", std::move(positions)},
            {"association", std::move(association)},
            {"subcarrier_assignment", std::move(subcarriers)},
            {"per_user_rate", rates_json(s.per_user_rate)},
            {"trace", std::move(trace)}};
}

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t runs = 500;
    std::string out_dir;
    bool json = false;
    bool dump_allocation = false;
    std::size_t workers = 0;
    std::string figure;
};

Scenario scenario_from(const Options& opt) {
    Scenario s = opt.config.empty() ? Scenario{} : load_scenario(opt.config);
    if (opt.seed) s.seed = *opt.seed;
    validate(s);
    return s;
}

void print_leader(std::ostream& out, const LeaderSolution& s, std::size_t users) {
    out << "R* = " << s.boundary_m << " m\n"
        << "HAPS-RIS users: " << s.covered_count << " / " << users << '\n'
        << "UAV-zone users: " << s.partition.uav_zone_users.size() << '\n'
        << "iterations: " << s.iterations_used << '\n';
    for (const auto& r : s.per_user_rate) {
        out << "  user " << r.user << ": " << r.rate_bps << " bps\n";
    }
}

void print_follower(std::ostream& out, const FollowerSolution& s) {
    out << "N* = " << s.uav_count << (s.feasible ? "" : " (infeasible)") << '\n';
    for (std::size_t j = 0; j < s.deployment.uav_count(); ++j) {
        const auto& p = s.deployment.uav_positions[j];
        out << "  UAV " << j << " at (" << p.x << ", " << p.y << ", " << p.z << ")\n";
    }
    for (const auto& r : s.per_user_rate) {
        out << "  user " << r.user << ": " << r.rate_bps << " bps\n";
    }
    if (!s.feasible) {
        out << "N(0) = " << s.initial_count
            << " already misses the rate target for some UAV-zone user\n";
    }
}

int run_solver(const std::string& command, const Options& opt, std::ostream& out) {
    const Scenario scenario = scenario_from(opt);
    const auto users = scenario_users(scenario);
    const auto leader = solve_leader(scenario, users);

    json doc = {{"seed", scenario.seed}};
    int code = kExitOk;
    if (command == "leader" || command == "plan") {
        doc["leader"] = to_json(leader, users.size(), opt.dump_allocation);
        if (!opt.json) print_leader(out, leader, users.size());
    }
    if (command == "follower" || command == "plan") {
        const auto follower = solve_follower(scenario, leader, users);
        doc["follower"] = to_json(follower);
        if (!opt.json) print_follower(out, follower);
        if (!follower.feasible) code = kExitInfeasible;
    }
    if (opt.json) {
        out << doc.dump(2) << '\n';
    } else if (opt.dump_allocation) {
        out << to_json(leader.allocation).dump(2) << '\n';
    }
    return code;
}

int run_sweep_command(const Options& opt, std::ostream& out) {
    const auto figure = parse_figure(opt.figure);
    if (!figure) throw ParameterError("unknown sweep '" + opt.figure + "' (fig2..fig5)");
    const Scenario base = scenario_from(opt);
    SweepSpec spec = default_sweep(*figure, base);
    spec.runs_per_point = opt.runs;
    spec.workers = opt.workers;
    const auto result = run_sweep(spec);

    if (opt.out_dir.empty()) {
        write_csv(out, result);
        return kExitOk;
    }
    std::filesystem::create_directories(opt.out_dir);
    const auto path = std::filesystem::path(opt.out_dir) / csv_file_name(*figure);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    write_csv(file, result);
    if (opt.json) {
        out << json{{"csv", path.string()}, {"points", result.points.size()}}.dump() << '\n';
    } else {
        out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HAPS-RIS / UAV hybrid coverage planner", "hapsris"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config, "Scenario file (TOML)");
    app.add_option("--seed", opt.seed, "Seed for user layouts and all randomized steps");
    app.add_option("--runs", opt.runs, "Monte-Carlo runs per sweep point")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out_dir, "Output directory for sweep CSV files");
    app.add_flag("--json", opt.json, "Print a machine-readable JSON result");
    app.add_flag("--dump-allocation", opt.dump_allocation, "Include the RIS allocation");
    app.add_option("--workers", opt.workers, "Sweep worker threads (0 = all cores)");

    auto* leader = app.add_subcommand("leader", "Solve the zone-boundary problem");
    auto* follower = app.add_subcommand("follower", "Solve the leader, then the UAV-count problem");
    auto* plan = app.add_subcommand("plan", "Leader then follower, report both");
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep for one result curve");
    sweep->add_option("figure", opt.figure, "fig2 | fig3 | fig4 | fig5")->required();
    auto* config = app.add_subcommand("config", "Print the resolved scenario as canonical TOML");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    try {
        if (*sweep) return run_sweep_command(opt, out);
        if (*config) {
            out << dump_scenario(scenario_from(opt));
            return kExitOk;
        }
        for (auto* sub : {leader, follower, plan}) {
            if (*sub) return run_solver(sub->get_name(), opt, out);
        }
    } catch (const ConfigError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParameterError& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SweepError& e) {
        err << "sweep aborted: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace hapsris
