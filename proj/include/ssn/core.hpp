#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssn {

/// A precondition on an input that the caller is responsible for (for
/// example selecting from an unevaluated population).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when an input is well-formed but carries no usable information,
/// such as a schema table whose fitness mass is zero.
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using Allele = std::uint8_t;
using Genes = std::vector<Allele>;

struct Individual {
    Genes genes;
    std::optional<double> fitness;

    bool evaluated() const { return fitness.has_value(); }
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;

    std::size_t size() const { return members.size(); }
    std::size_t length() const { return members.empty() ? 0 : members.front().genes.size(); }
    bool all_evaluated() const;
    double mean_fitness() const;
    double best_fitness() const;
};

/// Run-level random source. The engine is fixed so traces are reproducible
/// from the seed alone; its name goes into experiment metadata.
class Rng {
public:
    using Engine = std::mt19937_64;
    static constexpr const char* algorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    Engine& engine() { return engine_; }
    std::uint64_t next() { return engine_(); }

private:
    std::uint64_t seed_;
    Engine engine_;
};

/// Counter-based sub-stream used inside parallel kernels: item i of a batch
/// keyed by `key` always sees the same sequence regardless of scheduling.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    SplitMix64(std::uint64_t key, std::uint64_t index)
        : state_(key ^ (index * 0xD1B54A32D192ED03ULL)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// A possibly time-varying fitness landscape over fixed-length bitstrings.
/// Implementations must be pure: the same genes and generation always give
/// the same value.
class Landscape {
public:
    virtual ~Landscape() = default;

    virtual std::size_t length() const = 0;
    virtual double fitness(std::span<const Allele> genes, std::size_t generation) const = 0;
    virtual std::size_t phase_of(std::size_t generation) const = 0;
    virtual double optimum(std::size_t generation) const = 0;

    /// True iff the landscape differs from the previous generation's.
    bool changed(std::size_t generation) const {
        return generation >= 1 && phase_of(generation) != phase_of(generation - 1);
    }
};

Population random_population(std::size_t n, std::size_t length, Rng& rng);

std::size_t unitation(std::span<const Allele> genes);

/// Evaluates every member against `landscape` at `generation`. Negative
/// values are rejected with std::invalid_argument.
void evaluate(Population& pop, const Landscape& landscape, std::size_t generation);

/// Tournament selection with replacement; the first-drawn member wins ties.
Population tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng);

std::string to_string(std::span<const Allele> genes);
Genes genes_from_string(const std::string& bits);

} // namespace ssn
