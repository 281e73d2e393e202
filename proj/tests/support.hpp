#pragma once

#include "ssn/core.hpp"

#include <functional>
#include <utility>

namespace ssn::test {

// Stationary landscape built from a plain function of the genes.
class FnLandscape : public Landscape {
public:
    using Fn = std::function<double(std::span<const Allele>)>;

    FnLandscape(std::size_t length, Fn fn, double optimum = 0.0)
        : length_(length), fn_(std::move(fn)), optimum_(optimum) {}

    std::size_t length() const override { return length_; }
    double fitness(std::span<const Allele> genes, std::size_t) const override { return fn_(genes); }
    std::size_t phase_of(std::size_t) const override { return 0; }
    double optimum(std::size_t) const override { return optimum_; }

private:
    std::size_t length_;
    Fn fn_;
    double optimum_;
};

inline Population with_fitness(const std::vector<std::pair<const char*, double>>& rows) {
    Population pop;
    for (const auto& [bits, f] : rows)
        pop.members.push_back(Individual{genes_from_string(bits), f});
    return pop;
}

inline Population repeat(Population pop, std::size_t times) {
    Population out;
    for (std::size_t t = 0; t < times; ++t)
        out.members.insert(out.members.end(), pop.members.begin(), pop.members.end());
    return out;
}

} // namespace ssn::test
