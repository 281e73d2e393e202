#pragma once

// Per-group schema statistics and the sampling distributions built on them.
// A schema is the bit pattern a population member carries on one linkage
// group; pattern s is read most-significant-bit first over the sorted group
// indices, so for group {4,5,6,7} the genes 0,1,1,1 give s = 0b0111.

#include "ssn/core.hpp"
#include "ssn/mpm.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ssn {

enum class SamplingMode {
    Frequency, // schema frequencies of the selected population
    Schem1,    // fitness-weighted frequencies
    Schem2,    // Schem1 with below-average schemas removed
};

std::string_view to_string(SamplingMode mode);

struct SchemaTable {
    Group group;
    std::vector<std::uint64_t> counts; // c_s
    std::vector<double> fitness_sums;  // F_s, summed fitness of members carrying s
    double mean_fitness = 0.0;         // population mean
    std::size_t population_size = 0;

    std::size_t patterns() const { return counts.size(); }

    /// Average schema fitness with the per-group constant divisor 2^v, i.e.
    /// F_s / 2^v.
    double average_fitness(std::size_t pattern) const;
};

struct SamplingDistribution {
    std::vector<double> probs;
    SamplingMode mode = SamplingMode::Frequency;
};

/// Pattern index of `genes` on `group` (MSB first).
std::size_t schema_of(std::span<const Allele> genes, std::span<const std::size_t> group);

SchemaTable build_table(const Population& pop, const Group& group);

/// Throws DegenerateInput when the fitness-weighted modes have no fitness
/// mass to normalise, and std::invalid_argument on negative fitness sums.
/// Schem2 falls back to Schem1 when truncation removes every schema.
SamplingDistribution distribution(const SchemaTable& table, SamplingMode mode);

/// Model-based building-block crossover: every group of every offspring is
/// drawn independently from that group's distribution.
Population sample_offspring(const Partition& part, std::span<const SamplingDistribution> dists,
                            std::size_t n, Rng& rng);

} // namespace ssn
