#include "ssn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssn {

void TrapSpec::validate() const {
    if (k < 2)
        throw std::invalid_argument("trap order k must be at least 2");
    if (!(low > 0.0) || !(high > low))
        throw std::invalid_argument("trap requires high > low > 0");
}

double trap_value(std::size_t u, const TrapSpec& spec) {
    spec.validate();
    if (u > spec.k)
        throw std::invalid_argument("unitation exceeds trap order");
    const double k1 = static_cast<double>(spec.k - 1);
    const double du = static_cast<double>(u);
    switch (spec.shape) {
    case TrapShape::Standard:
        return u == spec.k ? spec.high : spec.low - du * spec.low / k1;
    case TrapShape::ModifiedEven:
        if (u == 0)
            return spec.high;
        return u == spec.k ? 0.0 : spec.low * du / k1;
    case TrapShape::ModifiedOdd:
        if (u == spec.k)
            return spec.high;
        return u == 0 ? 0.0 : spec.low * static_cast<double>(spec.k - u) / k1;
    }
    throw std::invalid_argument("unknown trap shape");
}

namespace {

std::int64_t whole(double value, const char* what) {
    if (std::floor(value) != value || std::abs(value) > 1e15)
        throw std::invalid_argument(std::string("exact trap arithmetic needs a whole-number ") +
                                    what);
    return static_cast<std::int64_t>(value);
}

std::int64_t binomial(std::size_t n, std::size_t k) {
    std::int64_t c = 1;
    for (std::size_t i = 1; i <= k; ++i)
        c = c * static_cast<std::int64_t>(n - k + i) / static_cast<std::int64_t>(i);
    return c;
}

} // namespace

Rational trap_value_exact(std::size_t u, const TrapSpec& spec) {
    spec.validate();
    if (u > spec.k)
        throw std::invalid_argument("unitation exceeds trap order");
    const Rational low(whole(spec.low, "low"));
    const Rational high(whole(spec.high, "high"));
    const auto k1 = static_cast<std::int64_t>(spec.k - 1);
    const auto iu = static_cast<std::int64_t>(u);
    const auto ik = static_cast<std::int64_t>(spec.k);
    switch (spec.shape) {
    case TrapShape::Standard:
        return u == spec.k ? high : low - low * iu / k1;
    case TrapShape::ModifiedEven:
        if (u == 0)
            return high;
        return u == spec.k ? Rational(0) : low * iu / k1;
    case TrapShape::ModifiedOdd:
        if (u == spec.k)
            return high;
        return u == 0 ? Rational(0) : low * (ik - iu) / k1;
    }
    throw std::invalid_argument("unknown trap shape");
}

std::vector<Rational> unitation_proportion_exact(std::span<const Rational> fitness_by_unitation) {
    if (fitness_by_unitation.empty())
        throw std::invalid_argument("fitness row must cover unitation 0..k");
    const std::size_t k = fitness_by_unitation.size() - 1;
    std::vector<Rational> weights(k + 1);
    Rational total(0);
    for (std::size_t i = 0; i <= k; ++i) {
        if (fitness_by_unitation[i] < Rational(0))
            throw std::invalid_argument("fitness row must be nonnegative");
        weights[i] = binomial(k, i) * fitness_by_unitation[i];
        total += weights[i];
    }
    if (total == Rational(0))
        throw DegenerateInput("fitness row is zero everywhere");
    for (auto& w : weights)
        w /= total;
    return weights;
}

std::vector<double> unitation_proportion(std::span<const double> fitness_by_unitation) {
    if (fitness_by_unitation.empty())
        throw std::invalid_argument("fitness row must cover unitation 0..k");
    const std::size_t k = fitness_by_unitation.size() - 1;
    std::vector<double> weights(k + 1);
    double total = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        if (!(fitness_by_unitation[i] >= 0.0))
            throw std::invalid_argument("fitness row must be nonnegative");
        weights[i] = static_cast<double>(binomial(k, i)) * fitness_by_unitation[i];
        total += weights[i];
    }
    if (!(total > 0.0))
        throw DegenerateInput("fitness row is zero everywhere");
    for (auto& w : weights)
        w /= total;
    return weights;
}

std::vector<Rational> theoretical_schema_proportion_exact(const TrapSpec& spec) {
    std::vector<Rational> row(spec.k + 1);
    for (std::size_t u = 0; u <= spec.k; ++u)
        row[u] = trap_value_exact(u, spec);
    return unitation_proportion_exact(row);
}

std::vector<double> theoretical_schema_proportion(const TrapSpec& spec) {
    std::vector<double> row(spec.k + 1);
    for (std::size_t u = 0; u <= spec.k; ++u)
        row[u] = trap_value(u, spec);
    return unitation_proportion(row);
}

std::vector<Group> contiguous_blocks(std::size_t length, std::size_t k) {
    return Partition::blocks(length, k).groups();
}

DynamicEnvironment::DynamicEnvironment(std::string name, std::size_t length,
                                       std::size_t cycle_length, std::vector<Phase> phases)
    : name_(std::move(name)), length_(length), cycle_length_(cycle_length),
      phases_(std::move(phases)) {
    if (length_ == 0)
        throw std::invalid_argument("environment length must be positive");
    if (cycle_length_ == 0)
        throw std::invalid_argument("cycle length must be positive");
    if (phases_.empty())
        throw std::invalid_argument("environment needs at least one phase");
    for (const auto& phase : phases_) {
        phase.trap.validate();
        const Partition tiling(phase.blocks); // throws unless disjoint and covering
        if (tiling.length() != length_)
            throw std::invalid_argument("phase blocks must tile the whole string");
        double best = 0.0;
        for (const auto& block : phase.blocks) {
            if (block.size() != phase.trap.k)
                throw std::invalid_argument("block width must equal the trap order");
            double block_best = 0.0;
            for (std::size_t u = 0; u <= phase.trap.k; ++u)
                block_best = std::max(block_best, trap_value(u, phase.trap));
            best += block_best;
        }
        optima_.push_back(best);
    }
}

std::size_t DynamicEnvironment::phase_of(std::size_t generation) const {
    return (generation / cycle_length_) % phases_.size();
}

double DynamicEnvironment::phase_fitness(std::span<const Allele> genes, std::size_t phase) const {
    if (genes.size() != length_)
        throw std::invalid_argument("genome length does not match the environment");
    const auto& p = phases_.at(phase);
    double total = 0.0;
    for (const auto& block : p.blocks) {
        std::size_t u = 0;
        for (std::size_t i : block)
            u += genes[i] & 1U;
        total += trap_value(u, p.trap);
    }
    return total;
}

double DynamicEnvironment::fitness(std::span<const Allele> genes, std::size_t generation) const {
    return phase_fitness(genes, phase_of(generation));
}

double DynamicEnvironment::optimum(std::size_t generation) const {
    return optima_[phase_of(generation)];
}

DynamicEnvironment static_trap(std::size_t length, const TrapSpec& spec) {
    return DynamicEnvironment("trap" + std::to_string(spec.k) + "-static", length, 1,
                              {Phase{spec, contiguous_blocks(length, spec.k)}});
}

DynamicEnvironment modified_trap4(std::size_t length, std::size_t cycle_length) {
    const TrapSpec even{4, 4.0, 5.0, TrapShape::ModifiedEven};
    const TrapSpec odd{4, 4.0, 5.0, TrapShape::ModifiedOdd};
    auto blocks = contiguous_blocks(length, 4);
    return DynamicEnvironment("trap4-modified", length, cycle_length,
                              {Phase{even, blocks}, Phase{odd, blocks}});
}

DynamicEnvironment switching_trap34(std::size_t length, std::size_t cycle_length) {
    if (length % 12 != 0)
        throw std::invalid_argument("switching trap-3/4 needs a length divisible by 12");
    const TrapSpec trap4{4, 4.0, 5.0, TrapShape::ModifiedEven};
    const TrapSpec trap3{3, 3.0, 5.0, TrapShape::ModifiedOdd};
    return DynamicEnvironment("trap34-switching", length, cycle_length,
                              {Phase{trap4, contiguous_blocks(length, 4)},
                               Phase{trap3, contiguous_blocks(length, 3)}});
}

DynamicEnvironment make_environment(const std::string& name, std::size_t length,
                                    std::size_t cycle_length) {
    if (name == "trap4-static")
        return static_trap(length, TrapSpec{4, 4.0, 5.0, TrapShape::Standard});
    if (name == "trap4-modified")
        return modified_trap4(length, cycle_length);
    if (name == "trap34-switching")
        return switching_trap34(length, cycle_length);
    throw std::invalid_argument("unknown environment '" + name + "'");
}

std::vector<std::string> environment_names() {
    return {"trap4-static", "trap4-modified", "trap34-switching"};
}

} // namespace ssn
