#include "hapsris/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "hapsris/errors.hpp"
#include "hapsris/follower.hpp"
#include "hapsris/leader.hpp"
#include "hapsris/rng.hpp"

namespace hapsris {

namespace {

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void check_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ParameterError("sweep grid is empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
        if (!(spec.grid[i] > spec.grid[i - 1])) {
            throw ParameterError("sweep grid must be strictly increasing");
        }
    }
    if (spec.runs_per_point == 0) throw ParameterError("runs_per_point must be >= 1");
    if (spec.figure != Figure::elements_vs_rate && spec.rate_targets.empty()) {
        throw ParameterError("sweep needs at least one rate target");
    }
    validate(spec.base);
}

std::size_t element_count_from(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ConfigError("ris.element_count", "must be >= 0");
    }
    return static_cast<std::size_t>(std::llround(value));
}

double run_metric(Figure figure, Scenario scenario, double grid_value, double rate_target) {
    switch (figure) {
    case Figure::coverage_vs_elements:
        scenario.ris.element_count = element_count_from(grid_value);
        scenario.rate_target_bps = rate_target;
        validate(scenario);
        return haps_only_coverage(scenario);
    case Figure::coverage_vs_power:
        scenario.radio.cs_power_dbm = grid_value;
        scenario.rate_target_bps = rate_target;
        validate(scenario);
        return haps_only_coverage(scenario);
    case Figure::elements_vs_rate: {
        scenario.rate_target_bps = grid_value;
        validate(scenario);
        const auto found = min_elements_for_full_coverage(scenario, grid_value);
        if (!found.element_count) {
            throw std::runtime_error("full coverage unreachable within the element cap");
        }
        return static_cast<double>(*found.element_count);
    }
    case Figure::uavs_vs_elements: {
        scenario.ris.element_count = element_count_from(grid_value);
        scenario.rate_target_bps = rate_target;
        validate(scenario);
        const auto users = scenario_users(scenario);
        const auto leader = solve_leader(scenario, users);
        return static_cast<double>(solve_follower(scenario, leader, users).uav_count);
    }
    }
    return 0.0;
}

}  // namespace

SweptParameter swept_parameter(Figure figure) {
    switch (figure) {
    case Figure::coverage_vs_power: return SweptParameter::cs_power_dbm;
    case Figure::elements_vs_rate: return SweptParameter::rate_target_bps;
    default: return SweptParameter::element_count;
    }
}

std::string_view figure_name(Figure figure) {
    switch (figure) {
    case Figure::coverage_vs_elements: return "fig2";
    case Figure::coverage_vs_power: return "fig3";
    case Figure::elements_vs_rate: return "fig4";
    case Figure::uavs_vs_elements: return "fig5";
    }
    return "";
}

std::string_view metric_name(Figure figure) {
    switch (figure) {
    case Figure::elements_vs_rate: return "min_elements";
    case Figure::uavs_vs_elements: return "uav_count";
    default: return "coverage_fraction";
    }
}

std::string_view csv_file_name(Figure figure) {
    switch (figure) {
    case Figure::coverage_vs_elements: return "fig2_coverage_vs_M.csv";
    case Figure::coverage_vs_power: return "fig3_coverage_vs_P.csv";
    case Figure::elements_vs_rate: return "fig4_M_vs_rate.csv";
    case Figure::uavs_vs_elements: return "fig5_N_vs_M.csv";
    }
    return "";
}

std::optional<Figure> parse_figure(std::string_view name) {
    for (auto f : {Figure::coverage_vs_elements, Figure::coverage_vs_power,
                   Figure::elements_vs_rate, Figure::uavs_vs_elements}) {
        if (figure_name(f) == name) return f;
    }
    return std::nullopt;
}

std::vector<SweepPoint> SweepResult::curve(double rate_target_bps) const {
    std::vector<SweepPoint> out;
    for (const auto& p : points) {
        if (p.rate_target_bps == rate_target_bps) out.push_back(p);
    }
    return out;
}

SweepSpec default_sweep(Figure figure, const Scenario& base) {
    SweepSpec spec;
    spec.figure = figure;
    spec.base = base;
    spec.base_seed = base.seed;
    switch (figure) {
    case Figure::coverage_vs_elements:
        spec.grid = {0.5e5, 1e5, 2e5, 3.5e5, 5e5, 7.5e5, 10e5};
        spec.rate_targets = {64e3, 128e3, 256e3};
        break;
    case Figure::coverage_vs_power:
        for (double p = 30.0; p <= 46.0; p += 2.0) spec.grid.push_back(p);
        spec.rate_targets = {64e3, 128e3, 256e3};
        spec.base.ris.element_count = 350'000;
        break;
    case Figure::elements_vs_rate:
        spec.grid = {32e3, 64e3, 128e3, 256e3, 512e3, 1024e3};
        break;
    case Figure::uavs_vs_elements:
        for (int i = 0; i <= 8; ++i) {
            spec.grid.push_back(std::round(std::pow(10.0, 5.0 + 0.25 * i)));
        }
        spec.rate_targets = {2e6, 4e6, 8e6};
        break;
    }
    return spec;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) {
    return derive_seed(base_seed, SeedStream::sweep_run, run_index);
}

SweepResult run_sweep(const SweepSpec& spec) {
    check_spec(spec);

    const std::vector<double> targets = spec.figure == Figure::elements_vs_rate
                                            ? std::vector<double>{0.0}
                                            : spec.rate_targets;
    const std::size_t runs = spec.runs_per_point;
    const std::size_t per_curve = spec.grid.size() * runs;
    const std::size_t tasks = targets.size() * per_curve;

    std::vector<double> values(tasks, 0.0);
    std::vector<std::exception_ptr> errors(tasks);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t task = next++; task < tasks; task = next++) {
            const std::size_t curve = task / per_curve;
            const std::size_t point = (task % per_curve) / runs;
            const std::size_t run = task % runs;
            Scenario scenario = spec.base;
            scenario.seed = run_seed(spec.base_seed, run);
            try {
                values[task] = run_metric(spec.figure, scenario, spec.grid[point], targets[curve]);
            } catch (...) {
                errors[task] = std::current_exception();
            }
        }
    };

    std::size_t workers = spec.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (std::size_t task = 0; task < tasks; ++task) {
        if (!errors[task]) continue;
        const std::uint64_t seed = run_seed(spec.base_seed, task % runs);
        try {
            std::rethrow_exception(errors[task]);
        } catch (const std::exception& e) {
            throw SweepError(seed, e.what());
        }
    }

    SweepResult result;
    result.figure = spec.figure;
    result.base_seed = spec.base_seed;
    for (std::size_t c = 0; c < targets.size(); ++c) {
        for (std::size_t p = 0; p < spec.grid.size(); ++p) {
            const double* v = values.data() + c * per_curve + p * runs;
            double sum = 0.0;
            for (std::size_t r = 0; r < runs; ++r) sum += v[r];
            const double mean = sum / static_cast<double>(runs);
            double ss = 0.0;
            for (std::size_t r = 0; r < runs; ++r) ss += (v[r] - mean) * (v[r] - mean);
            SweepPoint pt;
            pt.grid_value = spec.grid[p];
            pt.rate_target_bps =
                spec.figure == Figure::elements_vs_rate ? spec.grid[p] : targets[c];
            pt.mean = mean;
            pt.std = runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1)) : 0.0;
            pt.runs = runs;
            result.points.push_back(pt);
        }
    }
    return result;
}

SweepResult coverage_vs_elements(SweepSpec spec) {
    spec.figure = Figure::coverage_vs_elements;
    return run_sweep(spec);
}

SweepResult coverage_vs_power(SweepSpec spec) {
    spec.figure = Figure::coverage_vs_power;
    return run_sweep(spec);
}

SweepResult elements_vs_rate(SweepSpec spec) {
    spec.figure = Figure::elements_vs_rate;
    return run_sweep(spec);
}

SweepResult uavs_vs_elements(SweepSpec spec) {
    spec.figure = Figure::uavs_vs_elements;
    return run_sweep(spec);
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << kCsvHeader << '\n';
    for (const auto& p : result.points) {
        out << figure_name(result.figure) << ',' << metric_name(result.figure) << ','
            << format_number(p.grid_value) << ',' << format_number(p.rate_target_bps) << ','
            << format_number(p.mean) << ',' << format_number(p.std) << ',' << p.runs << ','
            << result.base_seed << '\n';
    }
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    write_csv(out, result);
    return out.str();
}

}  // namespace hapsris
