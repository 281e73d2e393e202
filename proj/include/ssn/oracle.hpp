#pragma once

// Brute-force reference for model search: every set partition of a short
// genome, scored with the MDL measure.

#include "ssn/core.hpp"
#include "ssn/mpm.hpp"

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace ssn {

/// All set partitions of {0..length-1} (Bell(length) of them), in
/// restricted-growth-string order.
std::vector<Partition> enumerate_partitions(std::size_t length);

struct ScoredPartition {
    Partition partition;
    MdlScore score;
};

inline constexpr std::size_t kMaxOracleLength = 5;

/// Scores every partition of the population's genome; length must not
/// exceed kMaxOracleLength.
std::vector<ScoredPartition> score_all_partitions(const Population& pop,
                                                  const MdlOptions& options = {});

/// One bitstring per line; blank lines and lines starting with '#' are
/// skipped. All strings must have the same length.
Population read_population(std::istream& in);
Population read_population_file(const std::string& path);

} // namespace ssn
