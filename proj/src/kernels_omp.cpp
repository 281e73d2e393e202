#include "ssn/kernels.hpp"

#include "kernel_detail.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssn::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace parallel {

void evaluate(std::span<Individual> members, const Landscape& landscape, std::size_t generation) {
    const auto n = static_cast<std::ptrdiff_t>(members.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            members[i].fitness = detail::checked_fitness(members[i], landscape, generation);
        } catch (...) {
#pragma omp critical(ssn_evaluate_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

void joint_entropies(std::span<const KeyColumn> columns, std::span<const CandidatePair> pairs,
                     std::span<const double> terms, std::span<double> out) {
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel
    {
        detail::CountScratch scratch;
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t p = 0; p < count; ++p)
            out[p] = detail::pair_entropy(columns[pairs[p].first], columns[pairs[p].second],
                                          terms, scratch);
    }
}

void sample(std::span<const std::vector<std::size_t>> groups,
            std::span<const std::vector<double>> cumulative, std::uint64_t key,
            std::span<Individual> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        detail::sample_one(groups, cumulative, key, static_cast<std::size_t>(i), out[i]);
}

} // namespace parallel
} // namespace ssn::kernels
