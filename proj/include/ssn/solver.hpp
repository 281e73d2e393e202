#pragma once

// The dynamic compact GA loop and its two sub-structural niching variants.

#include "ssn/core.hpp"
#include "ssn/mpm.hpp"
#include "ssn/schema.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ssn {

enum class Method { DcGA, Schem1, Schem2 };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
SamplingMode sampling_mode(Method method);

/// Which partition a restart shuffles building blocks with.
enum class RestartModel {
    /// The partition learned in the generation before the change.
    LastLearned,
    /// As LastLearned, except genes fixed in that generation's selected
    /// population keep the grouping of the previous restart model. A fixed
    /// gene is a singleton under every MDL-optimal partition, so the learned
    /// model says nothing about it.
    CarryFixedGenes,
};

std::string_view to_string(RestartModel restart);
RestartModel parse_restart_model(std::string_view name);

struct SolverConfig {
    Method method = Method::DcGA;
    std::size_t population_size = 5000;
    std::size_t tournament_size = 16;
    std::size_t max_generations = 100;
    std::uint64_t seed = 1;
    MdlOptions model;
    RestartModel restart_model = RestartModel::LastLearned;

    void validate() const;
};

struct TraceRecord {
    std::size_t generation = 0;
    std::size_t phase = 0;
    bool changed = false;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double current_optimum = 0.0;
    /// Model learned from this generation's selected population.
    std::string partition;

    bool operator==(const TraceRecord&) const = default;
};

struct RunTrace {
    std::uint64_t seed = 0;
    std::vector<TraceRecord> records;

    bool operator==(const RunTrace&) const = default;
};

/// Hook invoked with the evaluated population of every generation, before
/// selection. For tests and instrumentation only.
using GenerationObserver = std::function<void(const Population&)>;

/// Restart on a detected change: fresh random population, evaluation at
/// `generation`, tournament selection, then building-block crossover over
/// `last_model` with the method's sampling mode. Nothing from the population
/// before the change is used.
Population restart_population(const Landscape& landscape, std::size_t generation,
                              const Partition& last_model, const SolverConfig& cfg, Rng& rng);

/// Builds one schema table per group on `selected` and samples n offspring.
/// A fitness-weighted mode with no fitness mass falls back to frequencies.
Population model_crossover(const Population& selected, const Partition& model, SamplingMode mode,
                           std::size_t n, Rng& rng);

/// Genes on which every member of `pop` carries the same allele.
std::vector<bool> fixed_genes(const Population& pop);

/// Restart model under RestartModel::CarryFixedGenes: groups of `previous`
/// restricted to the genes fixed in `selected`, plus groups of `learned`
/// restricted to the rest.
Partition carry_linkage(const Partition& learned, const Partition& previous,
                        const Population& selected);

RunTrace run(const Landscape& landscape, const SolverConfig& cfg,
             const GenerationObserver& observer = {});

struct RecoveryEvent {
    std::size_t change_generation = 0;
    std::size_t generations = 0;
    /// False when the optimum was not re-attained before the next change (or
    /// the end of the trace); `generations` is then the whole gap.
    bool recovered = false;
};

/// For every change in `trace`, generations until best fitness reaches
/// (1 - epsilon) of the current optimum.
std::vector<RecoveryEvent> generations_to_recover(const RunTrace& trace, double epsilon);

/// First generation whose best fitness reaches (1 - epsilon) of the optimum.
std::optional<std::size_t> warmup_generation(const RunTrace& trace, double epsilon = 0.0);

} // namespace ssn
