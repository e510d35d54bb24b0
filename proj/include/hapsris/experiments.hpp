#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hapsris/scenario.hpp"

namespace hapsris {

/// The four result curves the harness can regenerate.
enum class Figure {
    coverage_vs_elements,  // fig2
    coverage_vs_power,     // fig3
    elements_vs_rate,      // fig4
    uavs_vs_elements,      // fig5
};

enum class SweptParameter { element_count, cs_power_dbm, rate_target_bps };

SweptParameter swept_parameter(Figure figure);
std::string_view figure_name(Figure figure);    // "fig2" .. "fig5"
std::string_view metric_name(Figure figure);
std::string_view csv_file_name(Figure figure);  // e.g. "fig2_coverage_vs_M.csv"
std::optional<Figure> parse_figure(std::string_view name);

struct SweepSpec {
    Figure figure = Figure::coverage_vs_elements;
    /// Strictly increasing values of the swept parameter.
    std::vector<double> grid;
    /// One curve per target. Ignored by elements_vs_rate, whose grid is the
    /// rate target itself.
    std::vector<double> rate_targets;
    Scenario base;
    std::size_t runs_per_point = 500;
    std::uint64_t base_seed = 1;
    /// 0 selects std::thread::hardware_concurrency().
    std::size_t workers = 0;
};

struct SweepPoint {
    double grid_value = 0.0;
    double rate_target_bps = 0.0;
    double mean = 0.0;
    double std = 0.0;
    std::size_t runs = 0;
};

struct SweepResult {
    Figure figure = Figure::coverage_vs_elements;
    std::uint64_t base_seed = 0;
    /// Ordered by rate target, then grid value.
    std::vector<SweepPoint> points;

    /// Points of one curve, in grid order.
    std::vector<SweepPoint> curve(double rate_target_bps) const;
};

class SweepError : public std::runtime_error {
public:
    SweepError(std::uint64_t seed, const std::string& what)
        : std::runtime_error("run with seed " + std::to_string(seed) + " failed: " + what),
          seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Default grid and rate targets for a figure on top of `base`.
SweepSpec default_sweep(Figure figure, const Scenario& base);

/// Seed of run `run_index`. Shared by every grid point and rate target, so
/// all points of all curves see the same user layouts.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index);

/// Runs every (rate target, grid value, run) task on a worker pool and
/// aggregates mean and sample standard deviation per point. The output does
/// not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec);

SweepResult coverage_vs_elements(SweepSpec spec);
SweepResult coverage_vs_power(SweepSpec spec);
SweepResult elements_vs_rate(SweepSpec spec);
SweepResult uavs_vs_elements(SweepSpec spec);

inline constexpr std::string_view kCsvHeader =
    "sweep,metric,grid_value,rate_target_bps,mean,std,runs,seed";

void write_csv(std::ostream& out, const SweepResult& result);
std::string to_csv(const SweepResult& result);

}  // namespace hapsris
