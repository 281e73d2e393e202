#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ssn/dynamics.hpp"
#include "ssn/solver.hpp"
#include "support.hpp"

#include <numeric>

using namespace ssn;

namespace {

RunTrace fixture(const std::vector<std::pair<double, bool>>& best_and_change, double optimum) {
    RunTrace t;
    for (std::size_t g = 0; g < best_and_change.size(); ++g) {
        TraceRecord r;
        r.generation = g;
        r.best_fitness = best_and_change[g].first;
        r.changed = best_and_change[g].second;
        r.current_optimum = optimum;
        t.records.push_back(r);
    }
    return t;
}

SolverConfig small(Method m, std::uint64_t seed, std::size_t gens = 20) {
    SolverConfig c;
    c.method = m;
    c.population_size = 400;
    c.max_generations = gens;
    c.seed = seed;
    return c;
}

// Landscape whose value is the same everywhere but whose phase flips every
// few generations, so restarts are exercised.
class FlatCycle : public Landscape {
public:
    FlatCycle(std::size_t length, double value) : length_(length), value_(value) {}
    std::size_t length() const override { return length_; }
    double fitness(std::span<const Allele>, std::size_t) const override { return value_; }
    std::size_t phase_of(std::size_t g) const override { return (g / 4) % 2; }
    double optimum(std::size_t) const override { return value_; }

private:
    std::size_t length_;
    double value_;
};

} // namespace

TEST_CASE("method and restart names") {
    for (auto m : {Method::DcGA, Method::Schem1, Method::Schem2})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("ecga"), std::invalid_argument);
    CHECK(sampling_mode(Method::DcGA) == SamplingMode::Frequency);
    CHECK(sampling_mode(Method::Schem2) == SamplingMode::Schem2);
    for (auto r : {RestartModel::LastLearned, RestartModel::CarryFixedGenes})
        CHECK(parse_restart_model(to_string(r)) == r);
    CHECK_THROWS_AS(parse_restart_model("none"), std::invalid_argument);
}

TEST_CASE("config validation") {
    const auto env = modified_trap4(8, 5);
    auto c = small(Method::DcGA, 1);
    c.population_size = 0;
    CHECK_THROWS_AS(run(env, c), std::invalid_argument);
    c = small(Method::DcGA, 1);
    c.tournament_size = 0;
    CHECK_THROWS_AS(run(env, c), std::invalid_argument);
    c = small(Method::DcGA, 1);
    c.max_generations = 0;
    CHECK_THROWS_AS(run(env, c), std::invalid_argument);
}

TEST_CASE("recovery fixtures") {
    SUBCASE("recovered at the change generation") {
        const auto t = fixture({{5, false}, {5, false}, {5, true}, {5, false}}, 5.0);
        const auto e = generations_to_recover(t, 0.0);
        REQUIRE(e.size() == 1);
        CHECK(e[0].change_generation == 2);
        CHECK(e[0].generations == 0);
        CHECK(e[0].recovered);
    }
    SUBCASE("three generations after the change") {
        const auto t = fixture({{5, false}, {2, true}, {3, false}, {4, false}, {5, false}, {5, false}}, 5.0);
        const auto e = generations_to_recover(t, 0.0);
        REQUIRE(e.size() == 1);
        CHECK(e[0].generations == 3);
        CHECK(e[0].recovered);
        CHECK(generations_to_recover(t, 0.2)[0].generations == 2);
    }
    SUBCASE("not recovered before the next change") {
        const auto t = fixture({{5, false}, {1, true}, {2, false}, {5, true}, {1, false}}, 5.0);
        const auto e = generations_to_recover(t, 0.0);
        REQUIRE(e.size() == 2);
        CHECK_FALSE(e[0].recovered);
        CHECK(e[0].generations == 2);
        CHECK(e[1].recovered);
        CHECK(e[1].generations == 0);
    }
    SUBCASE("not recovered by the end of the trace") {
        const auto t = fixture({{5, false}, {1, true}, {2, false}, {3, false}}, 5.0);
        const auto e = generations_to_recover(t, 0.0);
        REQUIRE(e.size() == 1);
        CHECK_FALSE(e[0].recovered);
        CHECK(e[0].generations == 3);
    }
}

TEST_CASE("warm-up generation") {
    const auto t = fixture({{1, false}, {3, false}, {5, false}}, 5.0);
    CHECK(warmup_generation(t) == 2);
    CHECK(warmup_generation(t, 0.5) == 1);
    CHECK_FALSE(warmup_generation(fixture({{1, false}}, 5.0)).has_value());
}

TEST_CASE("static trap-4 is solved within 10 generations") {
    const auto env = static_trap(20, TrapSpec{});
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        SolverConfig c;
        c.max_generations = 10;
        c.seed = seed;
        const auto t = run(env, c);
        const auto w = warmup_generation(t);
        solved += w.has_value();
    }
    CHECK(solved >= 27);
}

TEST_CASE("trace shape and bounds") {
    const auto env = modified_trap4(20, 5);
    for (auto m : {Method::DcGA, Method::Schem1, Method::Schem2}) {
        const auto t = run(env, small(m, 3, 23));
        REQUIRE(t.records.size() == 23);
        CHECK(t.seed == 3);
        for (std::size_t g = 0; g < t.records.size(); ++g) {
            const auto& r = t.records[g];
            CHECK(r.generation == g);
            CHECK(r.phase == env.phase_of(g));
            CHECK(r.changed == env.changed(g));
            CHECK(r.current_optimum == env.optimum(g));
            CHECK(r.best_fitness <= r.current_optimum);
            CHECK(r.mean_fitness <= r.best_fitness * (1.0 + 1e-12));
            CHECK(Partition::parse(r.partition).length() == 20);
        }
    }
}

TEST_CASE("runs are reproducible from the seed") {
    const auto env = switching_trap34(24, 5);
    for (auto m : {Method::DcGA, Method::Schem1, Method::Schem2}) {
        CHECK(run(env, small(m, 9)) == run(env, small(m, 9)));
        CHECK_FALSE(run(env, small(m, 9)) == run(env, small(m, 10)));
    }
}

TEST_CASE("restart ignores the population before the change") {
    const auto env = modified_trap4(12, 4);
    const auto model = Partition::blocks(12, 4);
    const auto cfg = small(Method::Schem1, 5);
    Rng a(42), b(42);
    const auto first = restart_population(env, 4, model, cfg, a);
    const auto second = restart_population(env, 4, model, cfg, b);
    REQUIRE(first.size() == cfg.population_size);
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(first.members[i].genes == second.members[i].genes);
    CHECK(first.generation == 4);
}

TEST_CASE("observer sees the restarted population at a change") {
    const auto env = modified_trap4(12, 4);
    auto cfg = small(Method::DcGA, 6, 9);
    std::vector<double> means;
    run(env, cfg, [&](const Population& p) {
        CHECK(p.all_evaluated());
        means.push_back(p.mean_fitness());
    });
    CHECK(means.size() == 9);
    const auto t = run(env, cfg);
    for (std::size_t g = 0; g < 9; ++g)
        CHECK(t.records[g].mean_fitness == means[g]);
}

TEST_CASE("uniform fitness makes dcGA and Schem1 identical") {
    const FlatCycle flat(16, 1.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto a = run(flat, small(Method::DcGA, seed, 12));
        const auto b = run(flat, small(Method::Schem1, seed, 12));
        CHECK(a == b);
        CHECK(a.records[4].changed);
    }
}

TEST_CASE("zero fitness everywhere falls back to frequency sampling") {
    const FlatCycle zero(8, 0.0);
    for (auto m : {Method::Schem1, Method::Schem2}) {
        const auto t = run(zero, small(m, 4, 10));
        CHECK(t == run(zero, small(Method::DcGA, 4, 10)));
    }
}

TEST_CASE("model crossover draws one distribution per group") {
    auto pop = test::repeat(test::with_fitness({{"0011", 1.0}, {"1100", 3.0}}), 50);
    Rng rng(8);
    const auto model = Partition({{0, 1}, {2, 3}});
    const auto off = model_crossover(pop, model, SamplingMode::Schem1, 1000, rng);
    std::size_t mixed = 0;
    for (const auto& ind : off.members) {
        CHECK(ind.genes[0] == ind.genes[1]);
        CHECK(ind.genes[2] == ind.genes[3]);
        mixed += ind.genes[0] == ind.genes[2];
    }
    CHECK(mixed > 0);
}

TEST_CASE("fixed genes and carried linkage") {
    auto pop = test::with_fitness({{"01100", 1}, {"01101", 1}, {"01110", 1}});
    const auto fixed = fixed_genes(pop);
    CHECK(fixed == std::vector<bool>{true, true, true, false, false});

    const auto previous = Partition({{0, 1, 2, 3}, {4}});
    const auto learned = Partition({{0}, {1}, {2}, {3, 4}});
    const auto carried = carry_linkage(learned, previous, pop);
    CHECK(carried == Partition({{0, 1, 2}, {3, 4}}));
    CHECK_THROWS_AS(carry_linkage(Partition::singletons(4), previous, pop), std::invalid_argument);
}

TEST_CASE("carry-fixed-genes restart model runs and differs from the default") {
    const auto env = modified_trap4(20, 5);
    auto c = small(Method::DcGA, 11, 30);
    c.population_size = 1000;
    const auto plain = run(env, c);
    c.restart_model = RestartModel::CarryFixedGenes;
    const auto carried = run(env, c);
    CHECK(carried.records.size() == 30);
    for (const auto& r : carried.records)
        CHECK(r.best_fitness <= r.current_optimum);
    CHECK(plain.records.front() == carried.records.front());
}
