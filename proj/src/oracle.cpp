#include "ssn/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace ssn {

std::vector<Partition> enumerate_partitions(std::size_t length) {
    std::vector<Partition> out;
    if (length == 0)
        return out;
    // rgs[i] is the block of element i; rgs[i] <= 1 + max(rgs[0..i-1]).
    std::vector<std::size_t> rgs(length, 0);
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t i, std::size_t blocks) {
        if (i == length) {
            std::vector<Group> groups(blocks);
            for (std::size_t e = 0; e < length; ++e)
                groups[rgs[e]].push_back(e);
            out.emplace_back(std::move(groups));
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            rgs[i] = b;
            extend(i + 1, std::max(blocks, b + 1));
        }
    };
    rgs[0] = 0;
    extend(1, 1);
    return out;
}

std::vector<ScoredPartition> score_all_partitions(const Population& pop,
                                                  const MdlOptions& options) {
    if (pop.members.empty())
        throw std::invalid_argument("oracle needs a non-empty population");
    if (pop.length() > kMaxOracleLength)
        throw std::invalid_argument("exhaustive oracle supports genomes of at most " +
                                    std::to_string(kMaxOracleLength) + " bits");
    std::vector<ScoredPartition> scored;
    for (auto& part : enumerate_partitions(pop.length())) {
        const auto score = mdl_score(pop, part, options);
        scored.push_back({std::move(part), score});
    }
    return scored;
}

Population read_population(std::istream& in) {
    Population pop;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line.erase(std::remove_if(line.begin(), line.end(),
                                  [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (line.empty() || line.front() == '#')
            continue;
        Individual ind;
        try {
            ind.genes = genes_from_string(line);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": not a bitstring: " + line);
        }
        if (!pop.members.empty() && ind.genes.size() != pop.length())
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": bitstring length differs from the first line");
        pop.members.push_back(std::move(ind));
    }
    if (pop.members.empty())
        throw std::invalid_argument("population file holds no bitstrings");
    return pop;
}

Population read_population_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open population file '" + path + "'");
    return read_population(in);
}

} // namespace ssn
