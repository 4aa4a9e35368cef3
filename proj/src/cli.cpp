#include "nkland/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nkland/errors.hpp"
#include "nkland/experiment.hpp"
#include "nkland/oracle.hpp"
#include "nkland/output.hpp"
#include "nkland/search.hpp"

namespace nkland::cli {

namespace {

// Weights default to the ITDC coefficients, which only exist for n = 5.
WeightSpec resolve_weight_spec(const std::optional<std::string>& text, std::size_t n) {
    if (text) return WeightSpec::parse(*text);
    return n == 5 ? WeightSpec::itdc() : WeightSpec::equal();
}

void emit(const std::optional<std::string>& path, std::string_view contents, std::ostream& out) {
    if (path) {
        write_text(*path, contents);
    } else {
        out << contents;
    }
}

struct SimulateOptions {
    std::size_t n = 5;
    std::vector<std::size_t> k_values{0, 1, 2, 3, 4};
    std::size_t runs = 5;
    std::size_t sims = 10'000;
    std::optional<std::string> weights;
    std::string pattern = "random";
    std::string landscape_mode = "per-sim";
    std::string strategy = "first";
    std::size_t jump_width = 2;
    std::optional<std::uint64_t> max_evaluations;
    std::uint64_t seed = 42;
    std::optional<std::string> out;
    std::string format = "csv";
    std::optional<std::string> plot;
    std::optional<std::string> records;
    unsigned threads = 0;
};

struct CensusOptions {
    std::size_t n = 5;
    std::size_t k = 4;
    std::size_t samples = 1000;
    std::optional<std::string> weights;
    std::string pattern = "random";
    std::uint64_t seed = 42;
    std::optional<std::string> out;
};

struct WalkOptions {
    std::size_t n = 5;
    std::size_t k = 2;
    std::optional<std::string> weights;
    std::string pattern = "random";
    std::string strategy = "first";
    std::size_t jump_width = 2;
    std::optional<std::uint64_t> max_evaluations;
    std::uint64_t seed = 42;
    std::optional<std::string> start;
    std::optional<std::string> out;
};

void run_simulate(const SimulateOptions& o, std::ostream& out) {
    ExperimentConfig config;
    config.n = o.n;
    config.k_values = o.k_values;
    config.runs = o.runs;
    config.sims_per_run = o.sims;
    config.weights = resolve_weight_spec(o.weights, o.n);
    config.pattern = parse_pattern(o.pattern);
    config.landscape_mode = parse_landscape_mode(o.landscape_mode);
    config.strategy = parse_strategy(o.strategy);
    config.jump_width = o.jump_width;
    config.max_evaluations = o.max_evaluations;
    config.master_seed = o.seed;
    const auto format = parse_format(o.format);
    config.validate();

    const auto result = run_experiment(config, {o.threads, o.records.has_value()});
    const ResultSet set{RunDescription::from_config(config), result.summaries};
    emit(o.out, format_results(set, format), out);
    if (o.plot) emit_plot(result.summaries, *o.plot);
    if (o.records) write_text(*o.records, format_records(result.records));
}

void run_census(const CensusOptions& o, std::ostream& out) {
    const auto weights = resolve_weight_spec(o.weights, o.n);
    const auto pattern = parse_pattern(o.pattern);
    const auto phi = weights.resolve(o.n);
    if (o.samples == 0) throw ParameterError("--samples must be at least 1");
    if (o.n == 0 || o.k > o.n - 1) throw ParameterError("--k must lie in 0..n-1");
    auto rng = derive_stream(o.seed, o.k, 0, 0, StreamPurpose::landscape);
    const auto stats = census_statistics(o.n, o.k, phi, pattern, o.samples, rng);

    nlohmann::json doc{
        {"config",
         {{"n", o.n}, {"k", o.k}, {"samples", o.samples}, {"seed", o.seed}, {"weights", weights.label()},
          {"pattern", std::string(to_string(pattern))}, {"version", std::string(kToolVersion)}}},
        {"mean_optima_count", stats.optima_count.mean},
        {"optima_count_stderr", stats.optima_count.standard_error},
        {"random_landscape_optima_count", expected_random_optima_count(o.n)},
        {"mean_local_optimum_fitness", stats.local_optimum_fitness.mean},
        {"local_optimum_fitness_stderr", stats.local_optimum_fitness.standard_error},
        {"mean_global_optimum_fitness", stats.global_optimum_fitness.mean},
        {"global_optimum_fitness_stderr", stats.global_optimum_fitness.standard_error}};
    emit(o.out, doc.dump(2) + "\n", out);
}

void run_walk(const WalkOptions& o, std::ostream& out) {
    const auto weights = resolve_weight_spec(o.weights, o.n).resolve(o.n);
    const auto pattern = parse_pattern(o.pattern);
    const SearchStrategy strategy{parse_strategy(o.strategy), o.jump_width,
                                  o.max_evaluations.value_or(default_budget(o.n))};
    strategy.validate(o.n);
    auto landscape_stream = derive_stream(o.seed, o.k, 0, 0, StreamPurpose::landscape);
    const auto landscape = Landscape::generate(o.n, o.k, pattern, weights, landscape_stream);
    Genotype start;
    if (o.start) {
        start = Genotype::parse(*o.start);
        if (start.size() != o.n) throw ParameterError("--start must have exactly n bits");
    } else {
        auto start_stream = derive_stream(o.seed, o.k, 0, 0, StreamPurpose::start);
        start = Genotype::random(o.n, start_stream);
    }
    auto walk_stream = derive_stream(o.seed, o.k, 0, 0, StreamPurpose::walk);
    const auto trace = adaptive_walk(landscape, start, strategy, walk_stream);
    emit(o.out, trace_to_json(trace), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"NK fitness landscape simulations with weighted loci", "nkland"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "run the adaptive-walk study over a list of K values");
    simulate->add_option("--n", sim.n, "number of loci")->capture_default_str();
    simulate->add_option("--k", sim.k_values, "comma-separated K values")->delimiter(',')->capture_default_str();
    simulate->add_option("--runs", sim.runs, "independent runs per K")->capture_default_str();
    simulate->add_option("--sims", sim.sims, "simulations per run")->capture_default_str();
    simulate->add_option("--weights", sim.weights, "equal | itdc | comma-separated betas (default itdc for n=5)");
    simulate->add_option("--pattern", sim.pattern, "random | adjacent")->capture_default_str();
    simulate->add_option("--landscape-mode", sim.landscape_mode, "per-sim | fixed-per-run")->capture_default_str();
    simulate->add_option("--strategy", sim.strategy, "first | steepest | longjump")->capture_default_str();
    simulate->add_option("--jump-width", sim.jump_width, "bits flipped per long jump")->capture_default_str();
    simulate->add_option("--max-evaluations", sim.max_evaluations, "per-walk evaluation budget (default 100*n)");
    simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "results file (default stdout)");
    simulate->add_option("--format", sim.format, "csv | json")->capture_default_str();
    simulate->add_option("--plot", sim.plot, "SVG chart path; a .tsv sidecar is written next to it");
    simulate->add_option("--records", sim.records, "per-simulation audit CSV");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)")->capture_default_str();

    CensusOptions cen;
    auto* census_cmd = app.add_subcommand("census", "exhaustive local-optima census over random landscapes");
    census_cmd->add_option("--n", cen.n, "number of loci")->capture_default_str();
    census_cmd->add_option("--k", cen.k, "epistasis degree")->capture_default_str();
    census_cmd->add_option("--samples", cen.samples, "landscapes to census")->capture_default_str();
    census_cmd->add_option("--weights", cen.weights, "equal | itdc | comma-separated betas (default itdc for n=5)");
    census_cmd->add_option("--pattern", cen.pattern, "random | adjacent")->capture_default_str();
    census_cmd->add_option("--seed", cen.seed, "master seed")->capture_default_str();
    census_cmd->add_option("--out", cen.out, "JSON output file (default stdout)");

    WalkOptions wlk;
    auto* walk = app.add_subcommand("walk", "trace a single walk on one landscape");
    walk->add_option("--n", wlk.n, "number of loci")->capture_default_str();
    walk->add_option("--k", wlk.k, "epistasis degree")->capture_default_str();
    walk->add_option("--weights", wlk.weights, "equal | itdc | comma-separated betas (default itdc for n=5)");
    walk->add_option("--pattern", wlk.pattern, "random | adjacent")->capture_default_str();
    walk->add_option("--strategy", wlk.strategy, "first | steepest | longjump")->capture_default_str();
    walk->add_option("--jump-width", wlk.jump_width, "bits flipped per long jump")->capture_default_str();
    walk->add_option("--max-evaluations", wlk.max_evaluations, "evaluation budget (default 100*n)");
    walk->add_option("--seed", wlk.seed, "master seed")->capture_default_str();
    walk->add_option("--start", wlk.start, "start genotype such as 01101 (default random)");
    walk->add_option("--out", wlk.out, "JSON output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "nkland: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) run_simulate(sim, out);
        if (census_cmd->parsed()) run_census(cen, out);
        if (walk->parsed()) run_walk(wlk, out);
    } catch (const ParameterError& e) {
        err << "nkland: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TractabilityError& e) {
        err << "nkland: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "nkland: " << e.what() << '\n';
        return kExitRuntimeFailure;
    }
    return kExitSuccess;
}

}  // namespace nkland::cli
