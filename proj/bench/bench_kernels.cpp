// Serial reference vs OpenMP kernels on generation-sized inputs.

#include "ssn/dynamics.hpp"
#include "ssn/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace ssn;
using namespace ssn::kernels;

namespace {

constexpr std::size_t kPop = 5000;

Population population(std::size_t length) {
    Rng rng(1);
    return random_population(kPop, length, rng);
}

template <auto Kernel>
void bm_evaluate(benchmark::State& state) {
    const auto length = static_cast<std::size_t>(state.range(0));
    const auto env = modified_trap4(length, 10);
    auto pop = population(length);
    for (auto _ : state) {
        Kernel(std::span(pop.members), env, 0);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kPop));
}

template <auto Kernel>
void bm_joint_entropies(benchmark::State& state) {
    const auto length = static_cast<std::size_t>(state.range(0));
    const auto pop = population(length);
    std::vector<KeyColumn> cols;
    for (std::size_t g = 0; g < length; ++g)
        cols.push_back(gene_column(pop.members, g));
    std::vector<CandidatePair> pairs;
    for (std::size_t i = 0; i < length; ++i)
        for (std::size_t j = i + 1; j < length; ++j)
            pairs.emplace_back(i, j);
    const auto terms = entropy_terms(kPop);
    std::vector<double> out(pairs.size());
    for (auto _ : state) {
        Kernel(std::span<const KeyColumn>(cols), std::span<const CandidatePair>(pairs),
               std::span<const double>(terms), std::span<double>(out));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}

template <auto Kernel>
void bm_sample(benchmark::State& state) {
    const auto length = static_cast<std::size_t>(state.range(0));
    const auto part = Partition::blocks(length, 4);
    std::vector<std::vector<double>> cdfs(part.group_count());
    for (auto& c : cdfs) {
        c.resize(16);
        for (std::size_t s = 0; s < 16; ++s)
            c[s] = double(s + 1) / 16.0;
    }
    std::vector<Individual> out(kPop);
    for (auto& ind : out)
        ind.genes.assign(length, 0);
    std::uint64_t key = 0;
    for (auto _ : state) {
        Kernel(std::span<const std::vector<std::size_t>>(part.groups()),
               std::span<const std::vector<double>>(cdfs), ++key, std::span<Individual>(out));
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kPop));
}

} // namespace

BENCHMARK(bm_evaluate<serial::evaluate>)->Arg(20)->Arg(84);
BENCHMARK(bm_evaluate<parallel::evaluate>)->Arg(20)->Arg(84);
BENCHMARK(bm_joint_entropies<serial::joint_entropies>)->Arg(20)->Arg(84);
BENCHMARK(bm_joint_entropies<parallel::joint_entropies>)->Arg(20)->Arg(84);
BENCHMARK(bm_sample<serial::sample>)->Arg(20)->Arg(84);
BENCHMARK(bm_sample<parallel::sample>)->Arg(20)->Arg(84);

BENCHMARK_MAIN();
