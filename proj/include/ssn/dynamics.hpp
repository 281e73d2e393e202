#pragma once

// Deceptive trap landscapes and their cyclic, phase-switching environments.

#include "ssn/core.hpp"
#include "ssn/mpm.hpp"

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ssn {

enum class TrapShape {
    Standard,     // optimum at u = k, deceptive slope toward u = 0
    ModifiedEven, // optimum at u = 0, attractor at u = k-1
    ModifiedOdd,  // optimum at u = k, attractor at u = 1
};

struct TrapSpec {
    std::size_t k = 4;
    double low = 4.0;
    double high = 5.0;
    TrapShape shape = TrapShape::Standard;

    /// Throws std::invalid_argument unless k >= 2 and high > low > 0.
    void validate() const;
};

double trap_value(std::size_t u, const TrapSpec& spec);

using Rational = boost::rational<std::int64_t>;

/// Exact trap value; `low` and `high` must be whole numbers.
Rational trap_value_exact(std::size_t u, const TrapSpec& spec);

/// Share of the fitness-weighted block population expected at each
/// unitation 0..k when blocks are uniform random:
/// C(k,i) f(i) / sum_j C(k,j) f(j).
std::vector<double> theoretical_schema_proportion(const TrapSpec& spec);

/// Same proportion for an arbitrary fitness row f(0..k). Throws
/// DegenerateInput when the weighted row sums to zero.
std::vector<double> unitation_proportion(std::span<const double> fitness_by_unitation);
std::vector<Rational> unitation_proportion_exact(std::span<const Rational> fitness_by_unitation);
std::vector<Rational> theoretical_schema_proportion_exact(const TrapSpec& spec);

/// One environment phase: the same trap on every block of a disjoint tiling.
struct Phase {
    TrapSpec trap;
    std::vector<Group> blocks;
};

class DynamicEnvironment final : public Landscape {
public:
    DynamicEnvironment(std::string name, std::size_t length, std::size_t cycle_length,
                       std::vector<Phase> phases);

    const std::string& name() const { return name_; }
    std::size_t length() const override { return length_; }
    std::size_t cycle_length() const { return cycle_length_; }
    const std::vector<Phase>& phases() const { return phases_; }
    const Phase& phase(std::size_t index) const { return phases_.at(index); }

    double fitness(std::span<const Allele> genes, std::size_t generation) const override;
    std::size_t phase_of(std::size_t generation) const override;
    double optimum(std::size_t generation) const override;

    double phase_fitness(std::span<const Allele> genes, std::size_t phase) const;
    double phase_optimum(std::size_t phase) const { return optima_.at(phase); }

private:
    std::string name_;
    std::size_t length_;
    std::size_t cycle_length_;
    std::vector<Phase> phases_;
    std::vector<double> optima_;
};

/// Aligned contiguous blocks of width k over `length` genes.
std::vector<Group> contiguous_blocks(std::size_t length, std::size_t k);

DynamicEnvironment static_trap(std::size_t length, const TrapSpec& spec);

/// Alternating trap-4 with low = 4, high = 5: zeros-optimal in even cycles,
/// ones-optimal in odd cycles.
DynamicEnvironment modified_trap4(std::size_t length, std::size_t cycle_length);

/// Alternates a zeros-optimal trap-4 (low 4, high 5) with a ones-optimal
/// trap-3 (low 3, high 5). `length` must be a multiple of 12.
DynamicEnvironment switching_trap34(std::size_t length, std::size_t cycle_length);

/// Builds one of "trap4-static", "trap4-modified", "trap34-switching".
DynamicEnvironment make_environment(const std::string& name, std::size_t length,
                                    std::size_t cycle_length);

std::vector<std::string> environment_names();

} // namespace ssn
