#include "ssn/schema.hpp"

#include "ssn/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ssn {

std::string_view to_string(SamplingMode mode) {
    switch (mode) {
    case SamplingMode::Frequency:
        return "frequency";
    case SamplingMode::Schem1:
        return "schem1";
    case SamplingMode::Schem2:
        return "schem2";
    }
    return "unknown";
}

double SchemaTable::average_fitness(std::size_t pattern) const {
    return fitness_sums.at(pattern) / static_cast<double>(patterns());
}

std::size_t schema_of(std::span<const Allele> genes, std::span<const std::size_t> group) {
    std::size_t s = 0;
    for (std::size_t i : group)
        s = (s << 1) | (genes[i] & 1U);
    return s;
}

SchemaTable build_table(const Population& pop, const Group& group) {
    if (pop.members.empty())
        throw std::invalid_argument("schema table of an empty population");
    if (group.empty() || group.size() > 24)
        throw std::invalid_argument("schema group width must be in 1..24");
    for (std::size_t i : group)
        if (i >= pop.length())
            throw std::invalid_argument("schema group index out of range");

    SchemaTable table;
    table.group = group;
    table.population_size = pop.size();
    table.counts.assign(std::size_t{1} << group.size(), 0);
    table.fitness_sums.assign(table.counts.size(), 0.0);
    double total = 0.0;
    for (const auto& ind : pop.members) {
        if (!ind.evaluated())
            throw ContractViolation("schema table requires an evaluated population");
        const std::size_t s = schema_of(ind.genes, group);
        ++table.counts[s];
        table.fitness_sums[s] += *ind.fitness;
        total += *ind.fitness;
    }
    table.mean_fitness = total / static_cast<double>(pop.size());
    return table;
}

namespace {

std::vector<double> normalised(const std::vector<double>& weights) {
    double sum = 0.0;
    for (double w : weights)
        sum += w;
    if (!(sum > 0.0))
        throw DegenerateInput("schema fitness mass is zero; nothing to normalise");
    std::vector<double> probs(weights.size());
    for (std::size_t s = 0; s < weights.size(); ++s)
        probs[s] = weights[s] / sum;
    return probs;
}

} // namespace

SamplingDistribution distribution(const SchemaTable& table, SamplingMode mode) {
    if (table.population_size == 0 || table.counts.empty())
        throw std::invalid_argument("empty schema table");

    SamplingDistribution dist;
    dist.mode = mode;
    if (mode == SamplingMode::Frequency) {
        const double n = static_cast<double>(table.population_size);
        dist.probs.resize(table.patterns());
        for (std::size_t s = 0; s < table.patterns(); ++s)
            dist.probs[s] = static_cast<double>(table.counts[s]) / n;
        return dist;
    }

    for (double f : table.fitness_sums)
        if (f < 0.0 || std::isnan(f))
            throw std::invalid_argument("fitness-weighted sampling requires nonnegative fitness");

    if (mode == SamplingMode::Schem2) {
        std::vector<double> kept = table.fitness_sums;
        bool any = false;
        for (std::size_t s = 0; s < kept.size(); ++s) {
            if (table.counts[s] == 0)
                continue;
            const double mean = table.fitness_sums[s] / static_cast<double>(table.counts[s]);
            if (mean < table.mean_fitness)
                kept[s] = 0.0;
            else if (kept[s] > 0.0)
                any = true;
        }
        if (any) {
            dist.probs = normalised(kept);
            return dist;
        }
        // Everything truncated: sample as Schem1 instead.
    }
    dist.probs = normalised(table.fitness_sums);
    return dist;
}

Population sample_offspring(const Partition& part, std::span<const SamplingDistribution> dists,
                            std::size_t n, Rng& rng) {
    if (dists.size() != part.group_count())
        throw std::invalid_argument("need exactly one distribution per group");
    std::vector<std::vector<double>> cumulative(dists.size());
    for (std::size_t g = 0; g < dists.size(); ++g) {
        const auto& probs = dists[g].probs;
        if (probs.size() != (std::size_t{1} << part.groups()[g].size()))
            throw std::invalid_argument("distribution size does not match group width");
        auto& cdf = cumulative[g];
        cdf.resize(probs.size());
        double acc = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t s = 0; s < probs.size(); ++s) {
            if (probs[s] < 0.0)
                throw std::invalid_argument("negative sampling probability");
            if (probs[s] > 0.0)
                last_positive = s;
            acc += probs[s];
            cdf[s] = acc;
        }
        if (!(acc > 0.0))
            throw std::invalid_argument("sampling distribution has no mass");
        // Close the distribution at its last supported pattern so rounding in
        // the running sum can never select an unsupported tail entry.
        for (std::size_t s = last_positive; s < cdf.size(); ++s)
            cdf[s] = acc;
        for (auto& c : cdf)
            c /= acc;
    }

    Population offspring;
    offspring.members.resize(n);
    for (auto& ind : offspring.members)
        ind.genes.assign(part.length(), 0);
    kernels::parallel::sample(part.groups(), cumulative, rng.next(), offspring.members);
    return offspring;
}

} // namespace ssn
