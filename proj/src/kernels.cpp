#include "ssn/kernels.hpp"

#include "kernel_detail.hpp"

#include <algorithm>
#include <cmath>

namespace ssn::kernels {

std::vector<double> entropy_terms(std::size_t n) {
    std::vector<double> terms(n + 1, 0.0);
    const double dn = static_cast<double>(n);
    for (std::size_t c = 1; c <= n; ++c) {
        const double p = static_cast<double>(c) / dn;
        terms[c] = -p * std::log2(p);
    }
    return terms;
}

KeyColumn gene_column(std::span<const Individual> members, std::size_t gene) {
    KeyColumn col;
    col.width = 1;
    col.keys.resize(members.size());
    col.bits.assign((members.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::uint32_t bit = members[i].genes[gene] & 1U;
        col.keys[i] = bit;
        col.bits[i / 64] |= std::uint64_t{bit} << (i % 64);
    }
    return col;
}

double entropy_of_counts(std::span<std::uint32_t> counts, std::span<const double> terms) {
    std::sort(counts.begin(), counts.end());
    double h = 0.0;
    for (std::uint32_t c : counts)
        h += terms[c];
    return h;
}

namespace serial {

void evaluate(std::span<Individual> members, const Landscape& landscape, std::size_t generation) {
    for (auto& ind : members)
        ind.fitness = detail::checked_fitness(ind, landscape, generation);
}

void joint_entropies(std::span<const KeyColumn> columns, std::span<const CandidatePair> pairs,
                     std::span<const double> terms, std::span<double> out) {
    detail::CountScratch scratch;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        out[p] = detail::pair_entropy(columns[pairs[p].first], columns[pairs[p].second], terms,
                                      scratch);
}

void sample(std::span<const std::vector<std::size_t>> groups,
            std::span<const std::vector<double>> cumulative, std::uint64_t key,
            std::span<Individual> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        detail::sample_one(groups, cumulative, key, i, out[i]);
}

} // namespace serial
} // namespace ssn::kernels
