#include "ssn/harness.hpp"

#include "ssn/schema.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ssn {

void ExperimentConfig::validate() const {
    if (seeds.empty())
        throw std::invalid_argument("experiment needs at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw std::invalid_argument("experiment seeds must be distinct");
    if (workers == 0)
        throw std::invalid_argument("worker count must be positive");
    solver(seeds.front()).validate();
    (void)build_environment();
}

SolverConfig ExperimentConfig::solver(std::uint64_t seed) const {
    SolverConfig s;
    s.method = method;
    s.population_size = population_size;
    s.tournament_size = tournament_size;
    s.max_generations = max_generations;
    s.seed = seed;
    s.model = model;
    s.restart_model = restart_model;
    return s;
}

DynamicEnvironment ExperimentConfig::build_environment() const {
    return make_environment(environment, length, cycle_length);
}

nlohmann::json ExperimentConfig::to_json() const {
    return {
        {"environment", environment},
        {"length", length},
        {"cycle_length", cycle_length},
        {"method", std::string(to_string(method))},
        {"seeds", seeds},
        {"population_size", population_size},
        {"tournament_size", tournament_size},
        {"max_generations", max_generations},
        {"model_complexity", model.form == ComplexityForm::Full ? "full" : "free-params"},
        {"max_group_size", model.max_group_size},
        {"restart_model", std::string(to_string(restart_model))},
        {"workers", workers},
    };
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i)
        seeds[i] = base + i;
    return seeds;
}

AggregateSeries aggregate(std::span<const RunTrace> traces) {
    AggregateSeries series;
    if (traces.empty())
        return series;
    const std::size_t generations = traces.front().records.size();
    for (const auto& t : traces)
        if (t.records.size() != generations)
            throw std::invalid_argument("traces to aggregate differ in length");

    const double runs = static_cast<double>(traces.size());
    for (std::size_t g = 0; g < generations; ++g) {
        AggregateRecord rec;
        const auto& first = traces.front().records[g];
        rec.generation = first.generation;
        rec.current_optimum = first.current_optimum;
        rec.changed = first.changed;
        double sum_best = 0.0, sum_mean = 0.0;
        for (const auto& t : traces) {
            sum_best += t.records[g].best_fitness;
            sum_mean += t.records[g].mean_fitness;
        }
        rec.mean_best = sum_best / runs;
        rec.mean_mean = sum_mean / runs;
        double var_best = 0.0, var_mean = 0.0;
        for (const auto& t : traces) {
            const double db = t.records[g].best_fitness - rec.mean_best;
            const double dm = t.records[g].mean_fitness - rec.mean_mean;
            var_best += db * db;
            var_mean += dm * dm;
        }
        rec.std_best = std::sqrt(var_best / runs);
        rec.std_mean = std::sqrt(var_mean / runs);
        series.records.push_back(rec);
    }
    return series;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    return run_experiment(cfg, cfg.build_environment());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Landscape& env) {
    if (cfg.seeds.empty())
        throw std::invalid_argument("experiment needs at least one seed");
    if (cfg.workers == 0)
        throw std::invalid_argument("worker count must be positive");
    const auto count = static_cast<std::ptrdiff_t>(cfg.seeds.size());

    ExperimentResult result;
    result.traces.resize(cfg.seeds.size());
    std::vector<std::exception_ptr> failures(cfg.seeds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(cfg.workers))
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            result.traces[i] = run(env, cfg.solver(cfg.seeds[i]));
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i])
            continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const std::exception& e) {
            throw std::runtime_error("run with seed " + std::to_string(cfg.seeds[i]) +
                                     " failed: " + e.what());
        }
    }
    result.series = aggregate(result.traces);
    return result;
}

FeasibilityReport feasibility_check(const TrapSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    const auto env = static_trap(spec.k, spec);
    Rng rng(seed);
    auto pop = random_population(n, spec.k, rng);
    evaluate(pop, env, 0);

    Group block(spec.k);
    for (std::size_t i = 0; i < spec.k; ++i)
        block[i] = i;
    const auto dist = distribution(build_table(pop, block), SamplingMode::Schem1);

    FeasibilityReport report;
    report.empirical.assign(spec.k + 1, 0.0);
    for (std::size_t s = 0; s < dist.probs.size(); ++s)
        report.empirical[static_cast<std::size_t>(std::popcount(s))] += dist.probs[s];
    report.theoretical_exact = theoretical_schema_proportion_exact(spec);
    for (const auto& r : report.theoretical_exact)
        report.theoretical.push_back(boost::rational_cast<double>(r));
    for (std::size_t u = 0; u <= spec.k; ++u)
        report.l1_distance += std::abs(report.empirical[u] - report.theoretical[u]);
    return report;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + text + "'");
    return value;
}

std::uint64_t parse_unsigned(const std::string& text) {
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not an unsigned integer: '" + text + "'");
    return value;
}

// Splits one CSV line; double quotes protect commas, "" is a literal quote.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

constexpr const char* kRunsHeader =
    "seed,generation,phase,changed,best_fitness,mean_fitness,current_optimum,partition";

} // namespace

std::string runs_csv(std::span<const RunTrace> traces) {
    std::string out = kRunsHeader;
    out += '\n';
    for (const auto& t : traces)
        for (const auto& r : t.records) {
            out += std::to_string(t.seed) + ',' + std::to_string(r.generation) + ',' +
                   std::to_string(r.phase) + ',' + (r.changed ? "1" : "0") + ',' +
                   format_double(r.best_fitness) + ',' + format_double(r.mean_fitness) + ',' +
                   format_double(r.current_optimum) + ",\"" + r.partition + "\"\n";
        }
    return out;
}

std::vector<RunTrace> parse_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRunsHeader)
        throw std::invalid_argument("runs.csv: missing or unexpected header");
    std::vector<RunTrace> traces;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 8)
            throw std::invalid_argument("runs.csv line " + std::to_string(line_no) +
                                        ": expected 8 fields");
        const auto seed = parse_unsigned(f[0]);
        if (traces.empty() || traces.back().seed != seed) {
            traces.emplace_back();
            traces.back().seed = seed;
        }
        TraceRecord r;
        r.generation = parse_unsigned(f[1]);
        r.phase = parse_unsigned(f[2]);
        r.changed = parse_unsigned(f[3]) != 0;
        r.best_fitness = parse_double(f[4]);
        r.mean_fitness = parse_double(f[5]);
        r.current_optimum = parse_double(f[6]);
        r.partition = f[7];
        traces.back().records.push_back(std::move(r));
    }
    return traces;
}

std::string aggregate_csv(const AggregateSeries& series) {
    std::string out = "generation,mean_best,std_best,mean_mean,std_mean,current_optimum\n";
    for (const auto& r : series.records)
        out += std::to_string(r.generation) + ',' + format_double(r.mean_best) + ',' +
               format_double(r.std_best) + ',' + format_double(r.mean_mean) + ',' +
               format_double(r.std_mean) + ',' + format_double(r.current_optimum) + '\n';
    return out;
}

std::string feasibility_csv(const FeasibilityReport& report) {
    std::string out = "unitation,empirical,theoretical,theoretical_exact\n";
    for (std::size_t u = 0; u < report.empirical.size(); ++u) {
        const auto& q = report.theoretical_exact[u];
        out += std::to_string(u) + ',' + format_double(report.empirical[u]) + ',' +
               format_double(report.theoretical[u]) + ',' + std::to_string(q.numerator()) +
               '/' + std::to_string(q.denominator()) + '\n';
    }
    return out;
}

std::string plot_svg(const AggregateSeries& series, const std::string& title) {
    constexpr double width = 640, height = 400, left = 60, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    double y_max = 1.0;
    for (const auto& r : series.records)
        y_max = std::max({y_max, r.current_optimum, r.mean_best});
    const double x_max = std::max<double>(1.0, static_cast<double>(series.records.size()) - 1.0);
    auto x = [&](double g) { return left + plot_w * g / x_max; };
    auto y = [&](double v) { return top + plot_h * (1.0 - v / y_max); };
    auto fmt = [](double v) {
        std::ostringstream s;
        s.precision(6);
        s << v;
        return s.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title
        << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">generation</text>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">"
        << fmt(y_max) << "</text>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">0</text>\n";

    for (const auto& r : series.records)
        if (r.changed)
            svg << "<line class=\"change\" x1=\"" << fmt(x(double(r.generation))) << "\" y1=\""
                << top << "\" x2=\"" << fmt(x(double(r.generation))) << "\" y2=\"" << top + plot_h
                << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"3,3\"/>\n";

    auto polyline = [&](auto value, const char* colour, const char* cls) {
        svg << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : series.records)
            svg << fmt(x(double(r.generation))) << ',' << fmt(y(value(r))) << ' ';
        svg << "\"/>\n";
    };
    polyline([](const AggregateRecord& r) { return r.current_optimum; }, "#999999", "optimum");
    polyline([](const AggregateRecord& r) { return r.mean_best; }, "#1f77b4", "mean-best");
    svg << "</svg>\n";
    return svg.str();
}

nlohmann::json meta_json(const ExperimentConfig& cfg) {
    return {
        {"software", "ssn"},
        {"version", kVersion},
        {"rng_algorithm", Rng::algorithm},
        {"config", cfg.to_json()},
    };
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    out.close();
    if (!out)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() +
                                 "': " + ec.message());
    write_text_file(dir / "runs.csv", runs_csv(result.traces));
    write_text_file(dir / "aggregate.csv", aggregate_csv(result.series));
    const std::string title = cfg.environment + " / " + std::string(to_string(cfg.method)) +
                              " / L=" + std::to_string(cfg.length) +
                              " / cycle " + std::to_string(cfg.cycle_length);
    write_text_file(dir / "plot.svg", plot_svg(result.series, title));
    write_text_file(dir / "meta.json", meta_json(cfg).dump(2) + "\n");
}

} // namespace ssn
