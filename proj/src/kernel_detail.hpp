#pragma once

// Per-item bodies shared by the serial and OpenMP kernels.

#include "ssn/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ssn::kernels::detail {

inline double checked_fitness(const Individual& ind, const Landscape& landscape,
                              std::size_t generation) {
    const double f = landscape.fitness(ind.genes, generation);
    if (!(f >= 0.0) || !std::isfinite(f))
        throw std::invalid_argument("fitness must be a finite nonnegative value, got " +
                                    std::to_string(f));
    return f;
}

/// Scratch space for one joint-entropy evaluation; reused across pairs.
struct CountScratch {
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> nonzero;
};

inline double packed_pair_entropy(const KeyColumn& a, const KeyColumn& b,
                                  std::span<const double> terms) {
    std::uint64_t ones_a = 0, ones_b = 0, both = 0;
    for (std::size_t w = 0; w < a.bits.size(); ++w) {
        ones_a += static_cast<std::uint64_t>(std::popcount(a.bits[w]));
        ones_b += static_cast<std::uint64_t>(std::popcount(b.bits[w]));
        both += static_cast<std::uint64_t>(std::popcount(a.bits[w] & b.bits[w]));
    }
    const std::uint64_t n = a.keys.size();
    std::uint32_t counts[4] = {
        static_cast<std::uint32_t>(n - ones_a - ones_b + both),
        static_cast<std::uint32_t>(ones_b - both),
        static_cast<std::uint32_t>(ones_a - both),
        static_cast<std::uint32_t>(both),
    };
    return entropy_of_counts(counts, terms);
}

inline double pair_entropy(const KeyColumn& a, const KeyColumn& b, std::span<const double> terms,
                           CountScratch& scratch) {
    if (a.width == 1 && b.width == 1 && !a.bits.empty() && !b.bits.empty())
        return packed_pair_entropy(a, b, terms);

    const std::size_t buckets = std::size_t{1} << (a.width + b.width);
    if (scratch.counts.size() < buckets)
        scratch.counts.resize(buckets, 0);
    scratch.touched.clear();

    const std::size_t n = a.keys.size();
    const unsigned shift = b.width;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t key = (a.keys[i] << shift) | b.keys[i];
        if (scratch.counts[key]++ == 0)
            scratch.touched.push_back(key);
    }
    scratch.nonzero.clear();
    for (std::uint32_t key : scratch.touched) {
        scratch.nonzero.push_back(scratch.counts[key]);
        scratch.counts[key] = 0;
    }
    return entropy_of_counts(scratch.nonzero, terms);
}

inline void sample_one(std::span<const std::vector<std::size_t>> groups,
                       std::span<const std::vector<double>> cumulative, std::uint64_t key,
                       std::size_t index, Individual& out) {
    SplitMix64 stream(key, index);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& group = groups[g];
        const auto& cdf = cumulative[g];
        const double u = stream.uniform();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t pattern = static_cast<std::size_t>(it - cdf.begin());
        if (pattern >= cdf.size())
            pattern = cdf.size() - 1;
        const std::size_t width = group.size();
        for (std::size_t j = 0; j < width; ++j)
            out.genes[group[j]] = static_cast<Allele>((pattern >> (width - 1 - j)) & 1U);
    }
    out.fitness.reset();
}

} // namespace ssn::kernels::detail
