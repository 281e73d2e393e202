// Command-line front end: experiment runs, the first-generation sampling
// check, and the exhaustive MDL oracle.

#include "ssn/harness.hpp"
#include "ssn/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>

namespace {

struct RunOptions {
    std::string env = "trap4-modified";
    std::string method = "dcga";
    std::size_t blocks = 0;
    std::size_t length = 0;
    std::size_t cycle = 10;
    std::size_t pop = 5000;
    std::size_t tournament = 16;
    std::size_t gens = 100;
    std::size_t seeds = 30;
    std::uint64_t base_seed = 1;
    std::string out;
    std::string preset;
    std::size_t workers = 1;
    std::string mdl_form = "full";
    std::string restart_model = "last-learned";
};

ssn::ComplexityForm parse_form(const std::string& name) {
    if (name == "full")
        return ssn::ComplexityForm::Full;
    if (name == "free-params")
        return ssn::ComplexityForm::FreeParams;
    throw std::invalid_argument("unknown MDL form '" + name + "'");
}

ssn::TrapShape parse_shape(const std::string& name) {
    if (name == "standard")
        return ssn::TrapShape::Standard;
    if (name == "modified-even")
        return ssn::TrapShape::ModifiedEven;
    if (name == "modified-odd")
        return ssn::TrapShape::ModifiedOdd;
    throw std::invalid_argument("unknown trap shape '" + name + "'");
}

// Preset values apply only to options the user did not set on the command
// line or in the config file.
void apply_preset(RunOptions& o, CLI::App& cmd) {
    auto unset = [&](const char* name) { return cmd.get_option(name)->count() == 0; };
    if (o.preset == "quick") {
        if (unset("--pop"))
            o.pop = 1000;
        if (unset("--seeds"))
            o.seeds = 5;
        if (unset("--blocks") && unset("--length"))
            o.blocks = 5;
    } else if (o.preset == "paper") {
        if (unset("--pop"))
            o.pop = 5000;
        if (unset("--tournament"))
            o.tournament = 16;
        if (unset("--gens"))
            o.gens = 100;
        if (unset("--seeds"))
            o.seeds = 30;
    } else if (!o.preset.empty()) {
        throw std::invalid_argument("unknown preset '" + o.preset + "'");
    }
}

// Values from the file fill options not given on the command line.
void apply_config_file(const std::string& path, CLI::App& cmd) {
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
        if (item.name == "++" || item.name == "--")
            continue;
        const std::string key = item.fullname();
        if (key == "config")
            throw std::invalid_argument("config files cannot include other config files");
        CLI::Option* opt = nullptr;
        try {
            opt = cmd.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw std::invalid_argument("unknown key '" + key + "' in " + path);
        }
        if (opt->count() > 0)
            continue;
        opt->add_result(item.inputs);
        opt->run_callback();
    }
}

ssn::ExperimentConfig experiment_config(const RunOptions& o) {
    ssn::ExperimentConfig cfg;
    cfg.environment = o.env;
    if (o.blocks != 0) {
        if (o.env == "trap34-switching")
            throw std::invalid_argument("trap34-switching takes --length, not --blocks");
        cfg.length = 4 * o.blocks;
        if (o.length != 0 && o.length != cfg.length)
            throw std::invalid_argument("--blocks and --length disagree");
    } else if (o.length != 0) {
        cfg.length = o.length;
    } else {
        throw std::invalid_argument("give --blocks or --length");
    }
    cfg.cycle_length = o.cycle;
    cfg.method = ssn::parse_method(o.method);
    cfg.population_size = o.pop;
    cfg.tournament_size = o.tournament;
    cfg.max_generations = o.gens;
    if (o.seeds == 0)
        throw std::invalid_argument("--seeds must be at least 1");
    cfg.seeds = ssn::seed_range(o.base_seed, o.seeds);
    cfg.workers = o.workers;
    cfg.model.form = parse_form(o.mdl_form);
    cfg.restart_model = ssn::parse_restart_model(o.restart_model);
    return cfg;
}

int run_command(const RunOptions& o) {
    const auto cfg = experiment_config(o);
    const auto result = ssn::run_experiment(cfg);
    if (!o.out.empty())
        ssn::emit_outputs(cfg, result, o.out);

    std::printf("%s / %s / L=%zu / cycle %zu / %zu seeds\n", cfg.environment.c_str(),
                std::string(ssn::to_string(cfg.method)).c_str(), cfg.length, cfg.cycle_length,
                cfg.seeds.size());
    std::printf("%-8s %-8s %-14s %s\n", "seed", "warm-up", "mean-recovery", "final best/opt");
    for (const auto& t : result.traces) {
        const auto warm = ssn::warmup_generation(t);
        const auto events = ssn::generations_to_recover(t, 0.05);
        double mean = 0.0;
        for (const auto& e : events)
            mean += static_cast<double>(e.generations);
        const auto& last = t.records.back();
        std::printf("%-8llu %-8s %-14s %s/%s\n", static_cast<unsigned long long>(t.seed),
                    warm ? std::to_string(*warm).c_str() : "-",
                    events.empty() ? "-" : ssn::format_double(mean / double(events.size())).c_str(),
                    ssn::format_double(last.best_fitness).c_str(),
                    ssn::format_double(last.current_optimum).c_str());
    }
    if (!o.out.empty())
        std::printf("wrote %s/{runs.csv,aggregate.csv,plot.svg,meta.json}\n", o.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-structural niching GA experiments on dynamic trap landscapes"};
    app.require_subcommand(1);

    RunOptions ro;
    std::string config_file;
    auto* run = app.add_subcommand("run", "run one experiment over a list of seeds");
    run->add_option("--config", config_file, "flat key = value file; command-line flags win")
        ->check(CLI::ExistingFile);
    run->add_option("--env", ro.env, "trap4-static | trap4-modified | trap34-switching")
        ->check(CLI::IsMember(ssn::environment_names()));
    run->add_option("--method", ro.method, "dcga | schem1 | schem2")
        ->check(CLI::IsMember({"dcga", "schem1", "schem2"}));
    run->add_option("--blocks", ro.blocks, "number of 4-bit blocks (trap4 environments)");
    run->add_option("--length", ro.length, "string length in bits");
    run->add_option("--cycle", ro.cycle, "generations per environment phase");
    run->add_option("--pop", ro.pop, "population size");
    run->add_option("--tournament", ro.tournament, "tournament size");
    run->add_option("--gens", ro.gens, "generations per run");
    run->add_option("--seeds", ro.seeds, "number of runs");
    run->add_option("--base-seed", ro.base_seed, "seed of the first run; run i uses base + i");
    run->add_option("--out", ro.out, "output directory");
    run->add_option("--preset", ro.preset, "quick | paper")->check(CLI::IsMember({"quick", "paper"}));
    run->add_option("--workers", ro.workers, "runs executed concurrently");
    run->add_option("--mdl-form", ro.mdl_form, "model complexity per group: full (2^v) | free-params (2^v - 1)")
        ->check(CLI::IsMember({"full", "free-params"}));
    run->add_option("--restart-model", ro.restart_model, "last-learned | carry-fixed-genes")
        ->check(CLI::IsMember({"last-learned", "carry-fixed-genes"}));

    std::size_t fk = 4, fpop = 5000;
    double flow = 4.0, fhigh = 5.0;
    std::uint64_t fseed = 1;
    std::string fout, fshape = "standard";
    auto* feas = app.add_subcommand("feasibility", "first-generation schema sampling check");
    feas->add_option("--k", fk, "trap order");
    feas->add_option("--low", flow, "trap low value");
    feas->add_option("--high", fhigh, "trap high value");
    feas->add_option("--shape", fshape, "standard | modified-even | modified-odd");
    feas->add_option("--pop", fpop, "number of sampled blocks");
    feas->add_option("--seed", fseed, "random seed");
    feas->add_option("--out", fout, "output directory for feasibility.csv");

    auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
    oracle->require_subcommand(1);
    std::string pop_file, oform = "full";
    auto* mdl = oracle->add_subcommand("mdl", "score every partition of a short genome");
    mdl->add_option("--pop-file", pop_file, "one bitstring per line")->required();
    mdl->add_option("--mdl-form", oform, "full | free-params")
        ->check(CLI::IsMember({"full", "free-params"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) {
            if (!config_file.empty())
                apply_config_file(config_file, *run);
            apply_preset(ro, *run);
            return run_command(ro);
        }
        if (*feas) {
            const ssn::TrapSpec spec{fk, flow, fhigh, parse_shape(fshape)};
            const auto report = ssn::feasibility_check(spec, fpop, fseed);
            std::printf("%-10s %-12s %-12s %s\n", "unitation", "empirical", "theoretical", "exact");
            for (std::size_t u = 0; u < report.empirical.size(); ++u) {
                const auto& q = report.theoretical_exact[u];
                std::printf("%-10zu %-12.6f %-12.6f %lld/%lld\n", u, report.empirical[u],
                            report.theoretical[u], static_cast<long long>(q.numerator()),
                            static_cast<long long>(q.denominator()));
            }
            std::printf("L1 distance: %.6f\n", report.l1_distance);
            if (!fout.empty()) {
                std::filesystem::create_directories(fout);
                ssn::write_text_file(std::filesystem::path(fout) / "feasibility.csv",
                                     ssn::feasibility_csv(report));
            }
            return 0;
        }
        if (*mdl) {
            const auto pop = ssn::read_population_file(pop_file);
            ssn::MdlOptions options;
            options.form = parse_form(oform);
            const auto scored = ssn::score_all_partitions(pop, options);
            const auto best = std::min_element(
                scored.begin(), scored.end(),
                [](const auto& a, const auto& b) { return a.score.total < b.score.total; });
            const auto greedy = ssn::learn_model(pop, options);
            std::printf("%-24s %14s %14s %14s\n", "partition", "cpc", "mc", "total");
            for (const auto& s : scored) {
                std::string tag;
                if (s.score.total == best->score.total)
                    tag += " min";
                if (s.partition == greedy)
                    tag += " greedy";
                std::printf("%-24s %14.6f %14.6f %14.6f%s\n", s.partition.to_string().c_str(),
                            s.score.cpc, s.score.mc, s.score.total, tag.c_str());
            }
            std::printf("%zu partitions, n=%zu, L=%zu\n", scored.size(), pop.size(), pop.length());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
