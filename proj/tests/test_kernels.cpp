#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ssn/kernels.hpp"
#include "support.hpp"

#include <omp.h>

#include <cmath>
#include <map>

using namespace ssn;
using namespace ssn::kernels;

namespace {

const int kThreadCounts[] = {1, 2, 3, 8};

struct ThreadScope {
    int saved = omp_get_max_threads();
    explicit ThreadScope(int n) { omp_set_num_threads(n); }
    ~ThreadScope() { omp_set_num_threads(saved); }
};

// Folds genes [first, first+width) of every member into a key column.
KeyColumn wide_column(const Population& pop, std::size_t first, unsigned width) {
    KeyColumn col;
    col.width = width;
    for (const auto& ind : pop.members) {
        std::uint32_t key = 0;
        for (unsigned j = 0; j < width; ++j)
            key = (key << 1) | ind.genes[first + j];
        col.keys.push_back(key);
    }
    return col;
}

double naive_joint_entropy(const KeyColumn& a, const KeyColumn& b) {
    std::map<std::uint64_t, double> counts;
    for (std::size_t i = 0; i < a.keys.size(); ++i)
        counts[(std::uint64_t{a.keys[i]} << b.width) | b.keys[i]] += 1.0;
    double h = 0.0;
    const double n = static_cast<double>(a.keys.size());
    for (const auto& [k, c] : counts)
        h -= c / n * std::log2(c / n);
    return h;
}

} // namespace

TEST_CASE("evaluate: serial and parallel agree") {
    test::FnLandscape land(37, [](std::span<const Allele> g) {
        double f = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            f += g[i] * std::sqrt(double(i + 1));
        return f;
    });
    Rng rng(1);
    const auto base = random_population(1001, 37, rng);
    auto ref = base;
    serial::evaluate(ref.members, land, 0);
    for (int t : kThreadCounts) {
        ThreadScope scope(t);
        auto par = base;
        parallel::evaluate(par.members, land, 0);
        for (std::size_t i = 0; i < ref.size(); ++i)
            CHECK(*par.members[i].fitness == *ref.members[i].fitness);
    }
}

TEST_CASE("evaluate: a failing item propagates from worker threads") {
    test::FnLandscape land(5, [](std::span<const Allele> g) { return g[0] ? -1.0 : 1.0; });
    Rng rng(2);
    auto pop = random_population(200, 5, rng);
    ThreadScope scope(4);
    CHECK_THROWS_AS(parallel::evaluate(pop.members, land, 0), std::invalid_argument);
}

TEST_CASE("joint entropies: packed and general paths agree with a naive count") {
    Rng rng(3);
    for (std::size_t n : {1, 63, 64, 65, 500, 5000}) {
        auto pop = random_population(n, 12, rng);
        // correlate genes 0 and 1 so not every pair looks uniform
        for (std::size_t i = 0; i < n; i += 3)
            pop.members[i].genes[1] = pop.members[i].genes[0];
        const auto terms = entropy_terms(n);
        std::vector<KeyColumn> packed, plain;
        for (std::size_t gene = 0; gene < 12; ++gene) {
            packed.push_back(gene_column(pop.members, gene));
            auto c = packed.back();
            c.bits.clear();
            plain.push_back(std::move(c));
        }
        std::vector<CandidatePair> pairs;
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = i + 1; j < 12; ++j)
                pairs.emplace_back(i, j);
        std::vector<double> a(pairs.size()), b(pairs.size());
        serial::joint_entropies(packed, pairs, terms, a);
        serial::joint_entropies(plain, pairs, terms, b);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            CHECK(a[p] == b[p]);
            CHECK(a[p] == doctest::Approx(naive_joint_entropy(packed[pairs[p].first],
                                                              packed[pairs[p].second]))
                              .epsilon(1e-12));
        }
    }
}

TEST_CASE("joint entropies: serial and parallel agree on mixed widths") {
    Rng rng(4);
    const std::size_t n = 3000;
    auto pop = random_population(n, 40, rng);
    std::vector<KeyColumn> cols;
    std::size_t at = 0;
    for (unsigned w : {1u, 2u, 1u, 3u, 4u, 1u, 5u, 2u, 1u, 8u, 1u, 1u, 6u, 1u, 3u}) {
        cols.push_back(w == 1 ? gene_column(pop.members, at) : wide_column(pop, at, w));
        at += w;
    }
    REQUIRE(at <= 40);
    std::vector<CandidatePair> pairs;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = i + 1; j < cols.size(); ++j)
            pairs.emplace_back(i, j);
    const auto terms = entropy_terms(n);
    std::vector<double> ref(pairs.size());
    serial::joint_entropies(cols, pairs, terms, ref);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        CHECK(ref[p] == doctest::Approx(naive_joint_entropy(cols[pairs[p].first],
                                                            cols[pairs[p].second]))
                            .epsilon(1e-12));
    for (int t : kThreadCounts) {
        ThreadScope scope(t);
        std::vector<double> par(pairs.size());
        parallel::joint_entropies(cols, pairs, terms, par);
        CHECK(par == ref);
    }
}

TEST_CASE("entropy of counts is order independent") {
    const auto terms = entropy_terms(100);
    std::vector<std::uint32_t> a{10, 30, 60}, b{60, 10, 30};
    CHECK(entropy_of_counts(a, terms) == entropy_of_counts(b, terms));
    std::vector<std::uint32_t> all{100};
    CHECK(entropy_of_counts(all, terms) == 0.0);
    std::vector<std::uint32_t> half{50, 50};
    CHECK(entropy_of_counts(half, terms) == doctest::Approx(1.0));
}

TEST_CASE("sample: serial and parallel agree and honour the groups") {
    const std::vector<std::vector<std::size_t>> groups{{0, 3}, {1}, {2, 4, 5}};
    const std::vector<std::vector<double>> cdfs{
        {0.1, 0.4, 0.4, 1.0}, {0.5, 1.0}, {0.0, 0.2, 0.2, 0.2, 0.6, 0.6, 0.6, 1.0}};
    const std::size_t n = 2000;
    auto blank = [&] {
        std::vector<Individual> v(n);
        for (auto& ind : v)
            ind.genes.assign(6, 0);
        return v;
    };
    auto ref = blank();
    serial::sample(groups, cdfs, 12345, ref);
    for (int t : kThreadCounts) {
        ThreadScope scope(t);
        auto par = blank();
        parallel::sample(groups, cdfs, 12345, par);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(par[i].genes == ref[i].genes);
    }
    // zero-probability patterns never appear: group 0 never 10, group 2 only 001, 100, 111
    for (const auto& ind : ref) {
        CHECK_FALSE((ind.genes[0] == 1 && ind.genes[3] == 0));
        const int p = ind.genes[2] * 4 + ind.genes[4] * 2 + ind.genes[5];
        CHECK((p == 1 || p == 4 || p == 7));
        CHECK_FALSE(ind.fitness.has_value());
    }
}

TEST_CASE("sample: different keys give different draws") {
    const std::vector<std::vector<std::size_t>> groups{{0}, {1}, {2}, {3}};
    const std::vector<std::vector<double>> cdfs(4, {0.5, 1.0});
    std::vector<Individual> a(64), b(64);
    for (auto* v : {&a, &b})
        for (auto& ind : *v)
            ind.genes.assign(4, 0);
    serial::sample(groups, cdfs, 1, a);
    serial::sample(groups, cdfs, 2, b);
    std::size_t same = 0;
    for (std::size_t i = 0; i < 64; ++i)
        same += a[i].genes == b[i].genes;
    CHECK(same < 64);
}
