#include "ssn/core.hpp"

#include "ssn/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace ssn {

bool Population::all_evaluated() const {
    return std::all_of(members.begin(), members.end(),
                       [](const Individual& ind) { return ind.evaluated(); });
}

double Population::mean_fitness() const {
    if (members.empty())
        throw std::invalid_argument("mean fitness of an empty population");
    double sum = 0.0;
    for (const auto& ind : members) {
        if (!ind.evaluated())
            throw ContractViolation("mean fitness requires an evaluated population");
        sum += *ind.fitness;
    }
    return sum / static_cast<double>(members.size());
}

double Population::best_fitness() const {
    if (members.empty())
        throw std::invalid_argument("best fitness of an empty population");
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!members[i].evaluated())
            throw ContractViolation("best fitness requires an evaluated population");
        if (i == 0 || *members[i].fitness > best)
            best = *members[i].fitness;
    }
    return best;
}

Population random_population(std::size_t n, std::size_t length, Rng& rng) {
    if (n == 0 || length == 0)
        throw std::invalid_argument("random_population needs n >= 1 and L >= 1");
    Population pop;
    pop.members.resize(n);
    for (auto& ind : pop.members) {
        ind.genes.resize(length);
        std::uint64_t word = 0;
        for (std::size_t j = 0; j < length; ++j) {
            if (j % 64 == 0)
                word = rng.next();
            ind.genes[j] = static_cast<Allele>(word & 1U);
            word >>= 1;
        }
    }
    return pop;
}

std::size_t unitation(std::span<const Allele> genes) {
    return static_cast<std::size_t>(std::count(genes.begin(), genes.end(), Allele{1}));
}

void evaluate(Population& pop, const Landscape& landscape, std::size_t generation) {
    for (const auto& ind : pop.members)
        if (ind.genes.size() != landscape.length())
            throw std::invalid_argument("genome length does not match the landscape");
    kernels::parallel::evaluate(pop.members, landscape, generation);
}

Population tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng) {
    if (tournament_size == 0)
        throw std::invalid_argument("tournament size must be at least 1");
    if (pop.members.empty())
        throw std::invalid_argument("cannot select from an empty population");
    if (!pop.all_evaluated())
        throw ContractViolation("tournament selection requires an evaluated population");

    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    Population selected;
    selected.generation = pop.generation;
    selected.members.reserve(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        std::size_t winner = pick(rng.engine());
        for (std::size_t t = 1; t < tournament_size; ++t) {
            const std::size_t challenger = pick(rng.engine());
            if (*pop.members[challenger].fitness > *pop.members[winner].fitness)
                winner = challenger;
        }
        selected.members.push_back(pop.members[winner]);
    }
    return selected;
}

std::string to_string(std::span<const Allele> genes) {
    std::string s(genes.size(), '0');
    for (std::size_t i = 0; i < genes.size(); ++i)
        s[i] = genes[i] ? '1' : '0';
    return s;
}

Genes genes_from_string(const std::string& bits) {
    Genes genes;
    genes.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may only contain '0' and '1': " + bits);
        genes.push_back(static_cast<Allele>(c - '0'));
    }
    return genes;
}

} // namespace ssn
