#pragma once

// Experiment orchestration: multi-seed runs, aggregation, the first-generation
// sampling check, and the files an experiment leaves behind.

#include "ssn/dynamics.hpp"
#include "ssn/solver.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace ssn {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    std::string environment = "trap4-modified";
    std::size_t length = 20;
    std::size_t cycle_length = 10;
    Method method = Method::DcGA;
    std::vector<std::uint64_t> seeds;
    std::size_t population_size = 5000;
    std::size_t tournament_size = 16;
    std::size_t max_generations = 100;
    MdlOptions model;
    RestartModel restart_model = RestartModel::LastLearned;
    std::size_t workers = 1;

    /// Throws std::invalid_argument on an empty or repeated seed list or an
    /// unbuildable environment.
    void validate() const;
    SolverConfig solver(std::uint64_t seed) const;
    DynamicEnvironment build_environment() const;
    nlohmann::json to_json() const;
};

/// base, base+1, ..., base+count-1.
std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count);

struct AggregateRecord {
    std::size_t generation = 0;
    double mean_best = 0.0;
    double std_best = 0.0;
    double mean_mean = 0.0;
    double std_mean = 0.0;
    double current_optimum = 0.0;
    bool changed = false;
};

struct AggregateSeries {
    std::vector<AggregateRecord> records;
};

/// Per-generation mean and population standard deviation across traces,
/// reduced in the order given.
AggregateSeries aggregate(std::span<const RunTrace> traces);

struct ExperimentResult {
    AggregateSeries series;
    std::vector<RunTrace> traces; // in seed-list order
};

/// One run per seed. A failing run aborts the experiment with a
/// std::runtime_error naming the seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// As above, on a caller-supplied landscape instead of cfg's named environment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Landscape& landscape);

struct FeasibilityReport {
    std::vector<double> empirical;   // fitness-weighted share per unitation
    std::vector<double> theoretical; // exact proportions, as doubles
    std::vector<Rational> theoretical_exact;
    double l1_distance = 0.0;
};

/// Samples n random k-bit blocks, evaluates them, and compares the Schem1
/// distribution (aggregated by unitation) to the theoretical proportions.
FeasibilityReport feasibility_check(const TrapSpec& spec, std::size_t n, std::uint64_t seed);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

std::string runs_csv(std::span<const RunTrace> traces);
std::string aggregate_csv(const AggregateSeries& series);
std::string feasibility_csv(const FeasibilityReport& report);
std::string plot_svg(const AggregateSeries& series, const std::string& title);
nlohmann::json meta_json(const ExperimentConfig& cfg);

/// Inverse of runs_csv.
std::vector<RunTrace> parse_runs_csv(std::istream& in);

/// Writes runs.csv, aggregate.csv, plot.svg and meta.json into `dir`,
/// creating it if needed. Throws std::runtime_error when a file cannot be
/// written.
void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace ssn
