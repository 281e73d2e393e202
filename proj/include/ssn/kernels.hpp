#pragma once

// Data-parallel inner loops of a generation. Each kernel exists twice with
// identical signatures: `serial` is the reference implementation kept for
// testing, `parallel` is the OpenMP version the library calls. Both must
// produce bit-identical results for any thread count.

#include "ssn/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ssn::kernels {

/// Per-individual pattern keys of one linkage group. `width` is the number
/// of genes folded into each key (keys are < 2^width).
struct KeyColumn {
    std::vector<std::uint32_t> keys;
    unsigned width = 0;
    /// Keys packed 64 per word; only filled for width-1 columns.
    std::vector<std::uint64_t> bits;
};

/// Builds a width-1 column for gene position `gene` of `members`.
KeyColumn gene_column(std::span<const Individual> members, std::size_t gene);

using CandidatePair = std::pair<std::size_t, std::size_t>;

/// Table of -p*log2(p) for p = c/n, c = 0..n.
std::vector<double> entropy_terms(std::size_t n);

/// Entropy of a count multiset. Counts are summed in sorted order so equal
/// multisets give bit-identical results. `counts` is reordered.
double entropy_of_counts(std::span<std::uint32_t> counts, std::span<const double> terms);

namespace serial {

void evaluate(std::span<Individual> members, const Landscape& landscape, std::size_t generation);

/// out[i] = entropy (bits) of the joint pattern of columns pairs[i].first and
/// pairs[i].second, with key (a << width_b) | b.
void joint_entropies(std::span<const KeyColumn> columns, std::span<const CandidatePair> pairs,
                     std::span<const double> terms, std::span<double> out);

/// Fills out[i].genes by drawing, for each group, a pattern from the matching
/// cumulative distribution using sub-stream (key, i).
void sample(std::span<const std::vector<std::size_t>> groups,
            std::span<const std::vector<double>> cumulative, std::uint64_t key,
            std::span<Individual> out);

} // namespace serial

namespace parallel {

void evaluate(std::span<Individual> members, const Landscape& landscape, std::size_t generation);

void joint_entropies(std::span<const KeyColumn> columns, std::span<const CandidatePair> pairs,
                     std::span<const double> terms, std::span<double> out);

void sample(std::span<const std::vector<std::size_t>> groups,
            std::span<const std::vector<double>> cumulative, std::uint64_t key,
            std::span<Individual> out);

} // namespace parallel

int max_threads();

} // namespace ssn::kernels
