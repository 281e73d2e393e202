#pragma once

// Marginal product models: partitions of gene positions into linkage groups,
// their minimum-description-length score, and greedy model search.

#include "ssn/core.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ssn {

using Group = std::vector<std::size_t>;

/// A set of disjoint, non-empty linkage groups covering {0..L-1}. Stored in
/// canonical form: indices sorted within a group, groups ordered by their
/// smallest index.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<Group> groups);

    static Partition singletons(std::size_t length);
    /// Contiguous aligned blocks of `block` genes; `length` must be a multiple.
    static Partition blocks(std::size_t length, std::size_t block);
    /// Inverse of to_string, e.g. "[0,1][2]".
    static Partition parse(const std::string& text);

    const std::vector<Group>& groups() const { return groups_; }
    std::size_t group_count() const { return groups_.size(); }
    std::size_t length() const { return length_; }
    std::size_t largest_group() const;

    /// Image under the gene relabeling i -> perm[i].
    Partition permuted(std::span<const std::size_t> perm) const;

    std::string to_string() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<Group> groups_;
    std::size_t length_ = 0;
};

/// How many parameters a group of width v is charged for.
enum class ComplexityForm {
    Full,       // 2^v, as in the MDL measure's model-complexity term
    FreeParams, // 2^v - 1, the classic ecGA count of free frequencies
};

struct MdlOptions {
    ComplexityForm form = ComplexityForm::Full;
    std::size_t max_group_size = 16;
};

struct MdlScore {
    double cpc = 0.0; // N * sum of group entropies
    double mc = 0.0;  // log2(N) * sum of per-group parameter counts
    double total = 0.0;
};

/// Parameter count charged for one group of `width` genes.
double group_parameters(std::size_t width, ComplexityForm form);

/// Empirical Shannon entropy in bits of the joint pattern on `group`.
double group_entropy(const Population& pop, std::span<const std::size_t> group);

MdlScore mdl_score(const Population& pop, const Partition& part, const MdlOptions& options = {});

struct ModelSearch {
    Partition partition;
    /// Score totals from the all-singletons start through every accepted merge.
    std::vector<double> totals;
    /// Set if some accepted step had more than one merge with the best delta.
    bool tie_broken = false;
};

/// Greedy agglomeration from all singletons: repeatedly apply the pairwise
/// merge with the largest strict decrease in total MDL, stopping when none
/// decreases it. Ties go to the lexicographically smallest pair of group
/// positions.
ModelSearch search_model(const Population& pop, const MdlOptions& options = {});

inline Partition learn_model(const Population& pop, const MdlOptions& options = {}) {
    return search_model(pop, options).partition;
}

} // namespace ssn
