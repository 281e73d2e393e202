#include "ssn/mpm.hpp"

#include "ssn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ssn {

Partition::Partition(std::vector<Group> groups) : groups_(std::move(groups)) {
    for (auto& g : groups_) {
        if (g.empty())
            throw std::invalid_argument("partition groups must be non-empty");
        std::sort(g.begin(), g.end());
        length_ += g.size();
    }
    std::sort(groups_.begin(), groups_.end(),
              [](const Group& a, const Group& b) { return a.front() < b.front(); });
    std::vector<bool> seen(length_, false);
    for (const auto& g : groups_)
        for (std::size_t i : g) {
            if (i >= length_ || seen[i])
                throw std::invalid_argument("partition groups must be disjoint and cover 0..L-1");
            seen[i] = true;
        }
}

Partition Partition::singletons(std::size_t length) {
    std::vector<Group> groups(length);
    for (std::size_t i = 0; i < length; ++i)
        groups[i] = {i};
    return Partition(std::move(groups));
}

Partition Partition::blocks(std::size_t length, std::size_t block) {
    if (block == 0 || length % block != 0)
        throw std::invalid_argument("length must be a positive multiple of the block size");
    std::vector<Group> groups(length / block);
    for (std::size_t b = 0; b < groups.size(); ++b) {
        groups[b].resize(block);
        std::iota(groups[b].begin(), groups[b].end(), b * block);
    }
    return Partition(std::move(groups));
}

Partition Partition::parse(const std::string& text) {
    std::vector<Group> groups;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '[')
            throw std::invalid_argument("malformed partition: " + text);
        const auto close = text.find(']', pos);
        if (close == std::string::npos)
            throw std::invalid_argument("malformed partition: " + text);
        Group g;
        std::stringstream body(text.substr(pos + 1, close - pos - 1));
        std::string item;
        while (std::getline(body, item, ',')) {
            std::size_t used = 0;
            const auto value = std::stoull(item, &used);
            if (used != item.size())
                throw std::invalid_argument("malformed partition: " + text);
            g.push_back(static_cast<std::size_t>(value));
        }
        groups.push_back(std::move(g));
        pos = close + 1;
    }
    return Partition(std::move(groups));
}

std::size_t Partition::largest_group() const {
    std::size_t largest = 0;
    for (const auto& g : groups_)
        largest = std::max(largest, g.size());
    return largest;
}

Partition Partition::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != length_)
        throw std::invalid_argument("permutation length does not match partition");
    std::vector<Group> groups = groups_;
    for (auto& g : groups)
        for (auto& i : g)
            i = perm[i];
    return Partition(std::move(groups));
}

std::string Partition::to_string() const {
    std::string out;
    for (const auto& g : groups_) {
        out += '[';
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (j)
                out += ',';
            out += std::to_string(g[j]);
        }
        out += ']';
    }
    return out;
}

double group_parameters(std::size_t width, ComplexityForm form) {
    const double full = std::ldexp(1.0, static_cast<int>(width));
    return form == ComplexityForm::Full ? full : full - 1.0;
}

double group_entropy(const Population& pop, std::span<const std::size_t> group) {
    if (pop.members.empty())
        throw std::invalid_argument("entropy of an empty population");
    const std::size_t length = pop.length();
    for (std::size_t i : group)
        if (i >= length)
            throw std::invalid_argument("group index out of range");

    std::unordered_map<std::string, std::uint32_t> tally;
    std::string pattern(group.size(), '0');
    for (const auto& ind : pop.members) {
        for (std::size_t j = 0; j < group.size(); ++j)
            pattern[j] = ind.genes[group[j]] ? '1' : '0';
        ++tally[pattern];
    }
    std::vector<std::uint32_t> counts;
    counts.reserve(tally.size());
    for (const auto& [_, c] : tally)
        counts.push_back(c);
    const auto terms = kernels::entropy_terms(pop.size());
    return kernels::entropy_of_counts(counts, terms);
}

MdlScore mdl_score(const Population& pop, const Partition& part, const MdlOptions& options) {
    if (pop.members.empty())
        throw std::invalid_argument("MDL score of an empty population");
    if (part.length() != pop.length())
        throw std::invalid_argument("partition does not cover the genome length");
    const double n = static_cast<double>(pop.size());
    MdlScore score;
    double entropy = 0.0;
    double parameters = 0.0;
    for (const auto& g : part.groups()) {
        entropy += group_entropy(pop, g);
        parameters += group_parameters(g.size(), options.form);
    }
    score.cpc = n * entropy;
    score.mc = std::log2(n) * parameters;
    score.total = score.cpc + score.mc;
    return score;
}

namespace {

// Working state of the greedy search. Positions index the current groups in
// canonical order (by smallest gene index); merging i < j keeps the result at
// i, which preserves that order.
class MergeSearch {
public:
    MergeSearch(const Population& pop, const MdlOptions& options)
        : options_(options), n_(static_cast<double>(pop.size())), log_n_(std::log2(n_)),
          terms_(kernels::entropy_terms(pop.size())) {
        const std::size_t length = pop.length();
        columns_.reserve(length);
        genes_.resize(length);
        entropy_.resize(length);
        for (std::size_t i = 0; i < length; ++i) {
            columns_.push_back(kernels::gene_column(pop.members, i));
            genes_[i] = {i};
            std::uint32_t ones = 0;
            for (auto k : columns_[i].keys)
                ones += k;
            std::uint32_t counts[2] = {static_cast<std::uint32_t>(pop.size()) - ones, ones};
            entropy_[i] = kernels::entropy_of_counts(counts, terms_);
        }
        joint_.assign(length, std::vector<double>(length, kNoCandidate));

        std::vector<kernels::CandidatePair> pairs;
        for (std::size_t i = 0; i < length; ++i)
            for (std::size_t j = i + 1; j < length; ++j)
                if (mergeable(i, j))
                    pairs.emplace_back(i, j);
        score_pairs(pairs);
    }

    double total() const {
        double entropy = 0.0, parameters = 0.0;
        for (std::size_t g = 0; g < columns_.size(); ++g) {
            entropy += entropy_[g];
            parameters += group_parameters(columns_[g].width, options_.form);
        }
        return n_ * entropy + log_n_ * parameters;
    }

    struct Step {
        std::size_t first = 0, second = 0;
        double delta = std::numeric_limits<double>::infinity();
        bool tie = false;
    };

    Step best_step() const {
        Step best;
        for (std::size_t i = 0; i < columns_.size(); ++i)
            for (std::size_t j = i + 1; j < columns_.size(); ++j) {
                if (!mergeable(i, j))
                    continue;
                const double d = delta(i, j);
                if (d < best.delta) {
                    best = {i, j, d, false};
                } else if (d == best.delta) {
                    best.tie = true;
                }
            }
        return best;
    }

    void merge(std::size_t i, std::size_t j) {
        auto& a = columns_[i];
        const auto& b = columns_[j];
        for (std::size_t k = 0; k < a.keys.size(); ++k)
            a.keys[k] = (a.keys[k] << b.width) | b.keys[k];
        a.width += b.width;
        a.bits.clear();
        genes_[i].insert(genes_[i].end(), genes_[j].begin(), genes_[j].end());
        entropy_[i] = joint_[i][j];

        columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(j));
        genes_.erase(genes_.begin() + static_cast<std::ptrdiff_t>(j));
        entropy_.erase(entropy_.begin() + static_cast<std::ptrdiff_t>(j));
        joint_.erase(joint_.begin() + static_cast<std::ptrdiff_t>(j));
        for (auto& row : joint_)
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));

        std::vector<kernels::CandidatePair> pairs;
        for (std::size_t k = 0; k < columns_.size(); ++k) {
            if (k == i)
                continue;
            const auto p = std::minmax(i, k);
            joint_[p.first][p.second] = kNoCandidate;
            if (mergeable(p.first, p.second))
                pairs.emplace_back(p.first, p.second);
        }
        score_pairs(pairs);
    }

    Partition partition() const { return Partition(genes_); }

private:
    static constexpr double kNoCandidate = std::numeric_limits<double>::quiet_NaN();

    bool mergeable(std::size_t i, std::size_t j) const {
        return columns_[i].width + columns_[j].width <= options_.max_group_size;
    }

    double delta(std::size_t i, std::size_t j) const {
        const unsigned wi = columns_[i].width, wj = columns_[j].width;
        const double d_entropy = joint_[i][j] - entropy_[i] - entropy_[j];
        const double d_params = group_parameters(wi + wj, options_.form) -
                                group_parameters(wi, options_.form) -
                                group_parameters(wj, options_.form);
        return n_ * d_entropy + log_n_ * d_params;
    }

    void score_pairs(const std::vector<kernels::CandidatePair>& pairs) {
        std::vector<double> out(pairs.size());
        kernels::parallel::joint_entropies(columns_, pairs, terms_, out);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            joint_[pairs[p].first][pairs[p].second] = out[p];
    }

    MdlOptions options_;
    double n_;
    double log_n_;
    std::vector<double> terms_;
    std::vector<kernels::KeyColumn> columns_;
    std::vector<Group> genes_;
    std::vector<double> entropy_;
    std::vector<std::vector<double>> joint_; // upper triangle, [i][j] for i < j
};

} // namespace

ModelSearch search_model(const Population& pop, const MdlOptions& options) {
    if (pop.members.empty())
        throw std::invalid_argument("cannot learn a model from an empty population");
    if (options.max_group_size == 0 || options.max_group_size > 24)
        throw std::invalid_argument("max_group_size must be in 1..24");

    MergeSearch search(pop, options);
    ModelSearch result;
    double total = search.total();
    result.totals.push_back(total);
    for (;;) {
        const auto step = search.best_step();
        const double tolerance = 1e-10 * (1.0 + std::abs(total));
        if (!(step.delta < -tolerance))
            break;
        search.merge(step.first, step.second);
        result.tie_broken = result.tie_broken || step.tie;
        total = search.total();
        result.totals.push_back(total);
    }
    result.partition = search.partition();
    return result;
}

} // namespace ssn
