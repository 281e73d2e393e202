#include "ssn/solver.hpp"

#include <stdexcept>

namespace ssn {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::DcGA:
        return "dcga";
    case Method::Schem1:
        return "schem1";
    case Method::Schem2:
        return "schem2";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "dcga")
        return Method::DcGA;
    if (name == "schem1")
        return Method::Schem1;
    if (name == "schem2")
        return Method::Schem2;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

SamplingMode sampling_mode(Method method) {
    switch (method) {
    case Method::DcGA:
        return SamplingMode::Frequency;
    case Method::Schem1:
        return SamplingMode::Schem1;
    case Method::Schem2:
        return SamplingMode::Schem2;
    }
    throw std::invalid_argument("unknown method");
}

void SolverConfig::validate() const {
    if (population_size == 0)
        throw std::invalid_argument("population size must be positive");
    if (tournament_size == 0)
        throw std::invalid_argument("tournament size must be positive");
    if (max_generations == 0)
        throw std::invalid_argument("max generations must be positive");
    if (model.max_group_size == 0)
        throw std::invalid_argument("max group size must be positive");
}

std::string_view to_string(RestartModel restart) {
    return restart == RestartModel::LastLearned ? "last-learned" : "carry-fixed-genes";
}

RestartModel parse_restart_model(std::string_view name) {
    if (name == "last-learned")
        return RestartModel::LastLearned;
    if (name == "carry-fixed-genes")
        return RestartModel::CarryFixedGenes;
    throw std::invalid_argument("unknown restart model '" + std::string(name) + "'");
}

Population model_crossover(const Population& selected, const Partition& model, SamplingMode mode,
                           std::size_t n, Rng& rng) {
    std::vector<SamplingDistribution> dists;
    dists.reserve(model.group_count());
    for (const auto& group : model.groups()) {
        const auto table = build_table(selected, group);
        try {
            dists.push_back(distribution(table, mode));
        } catch (const DegenerateInput&) {
            dists.push_back(distribution(table, SamplingMode::Frequency));
        }
    }
    return sample_offspring(model, dists, n, rng);
}

Population restart_population(const Landscape& landscape, std::size_t generation,
                              const Partition& last_model, const SolverConfig& cfg, Rng& rng) {
    auto fresh = random_population(cfg.population_size, landscape.length(), rng);
    evaluate(fresh, landscape, generation);
    const auto selected = tournament_select(fresh, cfg.tournament_size, rng);
    auto offspring =
        model_crossover(selected, last_model, sampling_mode(cfg.method), cfg.population_size, rng);
    offspring.generation = generation;
    return offspring;
}

std::vector<bool> fixed_genes(const Population& pop) {
    const std::size_t length = pop.length();
    std::vector<bool> fixed(length, true);
    if (pop.members.empty())
        return fixed;
    const auto& first = pop.members.front().genes;
    for (const auto& ind : pop.members)
        for (std::size_t i = 0; i < length; ++i)
            if (ind.genes[i] != first[i])
                fixed[i] = false;
    return fixed;
}

Partition carry_linkage(const Partition& learned, const Partition& previous,
                        const Population& selected) {
    if (learned.length() != previous.length() || learned.length() != selected.length())
        throw std::invalid_argument("partitions and population disagree on genome length");
    const auto fixed = fixed_genes(selected);
    std::vector<Group> groups;
    for (const auto& g : previous.groups()) {
        Group kept;
        for (auto i : g)
            if (fixed[i])
                kept.push_back(i);
        if (!kept.empty())
            groups.push_back(std::move(kept));
    }
    for (const auto& g : learned.groups()) {
        Group kept;
        for (auto i : g)
            if (!fixed[i])
                kept.push_back(i);
        if (!kept.empty())
            groups.push_back(std::move(kept));
    }
    return Partition(std::move(groups));
}

RunTrace run(const Landscape& landscape, const SolverConfig& cfg,
             const GenerationObserver& observer) {
    cfg.validate();
    Rng rng(cfg.seed);
    RunTrace trace;
    trace.seed = cfg.seed;
    trace.records.reserve(cfg.max_generations);

    const SamplingMode mode = sampling_mode(cfg.method);
    auto pop = random_population(cfg.population_size, landscape.length(), rng);
    std::optional<Partition> last_model;

    for (std::size_t g = 0; g < cfg.max_generations; ++g) {
        const bool changed = landscape.changed(g);
        if (changed) {
            pop = last_model ? restart_population(landscape, g, *last_model, cfg, rng)
                             : random_population(cfg.population_size, landscape.length(), rng);
        }
        pop.generation = g;

        evaluate(pop, landscape, g);
        if (observer)
            observer(pop);

        TraceRecord record;
        record.generation = g;
        record.phase = landscape.phase_of(g);
        record.changed = changed;
        record.best_fitness = pop.best_fitness();
        record.mean_fitness = pop.mean_fitness();
        record.current_optimum = landscape.optimum(g);

        const auto selected = tournament_select(pop, cfg.tournament_size, rng);
        auto model = learn_model(selected, cfg.model);
        record.partition = model.to_string();
        trace.records.push_back(std::move(record));

        pop = model_crossover(selected, model, mode, cfg.population_size, rng);
        if (cfg.restart_model == RestartModel::CarryFixedGenes && last_model)
            last_model = carry_linkage(model, *last_model, selected);
        else
            last_model = std::move(model);
    }
    return trace;
}

std::vector<RecoveryEvent> generations_to_recover(const RunTrace& trace, double epsilon) {
    std::vector<RecoveryEvent> events;
    const auto& r = trace.records;
    for (std::size_t c = 0; c < r.size(); ++c) {
        if (!r[c].changed)
            continue;
        std::size_t end = c + 1;
        while (end < r.size() && !r[end].changed)
            ++end;
        RecoveryEvent event;
        event.change_generation = r[c].generation;
        event.generations = end - c;
        for (std::size_t g = c; g < end; ++g) {
            if (r[g].best_fitness >= (1.0 - epsilon) * r[g].current_optimum) {
                event.generations = g - c;
                event.recovered = true;
                break;
            }
        }
        events.push_back(event);
    }
    return events;
}

std::optional<std::size_t> warmup_generation(const RunTrace& trace, double epsilon) {
    for (const auto& rec : trace.records)
        if (rec.best_fitness >= (1.0 - epsilon) * rec.current_optimum)
            return rec.generation;
    return std::nullopt;
}

} // namespace ssn
