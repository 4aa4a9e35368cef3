#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nkland/errors.hpp"
#include "nkland/experiment.hpp"
#include "nkland/landscape.hpp"
#include "nkland/oracle.hpp"
#include "nkland/output.hpp"
#include "nkland/search.hpp"

namespace py = pybind11;
using namespace nkland;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "NK fitness landscapes with weighted loci, adaptive walks and experiment runner";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<TractabilityError>(m, "TractabilityError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &RandomStream::next)
        .def("uniform01", &RandomStream::uniform01)
        .def("below", &RandomStream::below, py::arg("bound"));

    py::class_<Genotype>(m, "Genotype")
        .def(py::init([](const std::string& text) { return Genotype::parse(text); }), py::arg("bits"))
        .def_static("from_index", &Genotype::from_index, py::arg("value"), py::arg("n"))
        .def("to_index", &Genotype::to_index)
        .def("flipped", &Genotype::flipped, py::arg("locus"))
        .def("__len__", &Genotype::size)
        .def("__getitem__", [](const Genotype& g, std::size_t i) {
            if (i >= g.size()) throw py::index_error();
            return static_cast<int>(g[i]);
        })
        .def("__str__", &Genotype::to_string)
        .def("__repr__", [](const Genotype& g) { return "Genotype('" + g.to_string() + "')"; })
        .def("__hash__", [](const Genotype& g) { return std::hash<std::string>{}(g.to_string()); })
        .def(py::self == py::self);

    py::enum_<EpistasisPattern>(m, "EpistasisPattern")
        .value("random", EpistasisPattern::random)
        .value("adjacent", EpistasisPattern::adjacent);

    py::class_<EpistasisMap>(m, "EpistasisMap")
        .def(py::init<std::vector<std::vector<std::size_t>>>(), py::arg("partners"))
        .def_property_readonly("n", &EpistasisMap::n)
        .def_property_readonly("k", &EpistasisMap::k)
        .def("partners", [](const EpistasisMap& e, std::size_t i) {
            const auto p = e.partners(i);
            return std::vector<std::size_t>(p.begin(), p.end());
        });

    py::class_<FitnessTable>(m, "FitnessTable")
        .def(py::init<std::size_t, std::size_t, std::vector<double>>(), py::arg("n"), py::arg("k"), py::arg("entries"))
        .def_property_readonly("total_entries", &FitnessTable::total_entries)
        .def("at", &FitnessTable::at, py::arg("locus"), py::arg("row"))
        .def("entries", [](const FitnessTable& t) { return to_vector(t.entries()); });

    py::class_<WeightVector>(m, "WeightVector")
        .def_static("equal", &WeightVector::equal, py::arg("n"))
        .def("values", [](const WeightVector& w) { return to_vector(w.values()); })
        .def("__len__", &WeightVector::size);

    m.def("make_weight_vector", [](const std::vector<double>& betas) { return make_weight_vector(betas); },
          py::arg("betas"));
    m.attr("ITDC_BETAS") = std::vector<double>(kItdcBetas.begin(), kItdcBetas.end());

    m.def("build_epistasis_map", &build_epistasis_map, py::arg("n"), py::arg("k"), py::arg("pattern"), py::arg("rng"));
    m.def("generate_fitness_tables", &generate_fitness_tables, py::arg("n"), py::arg("k"), py::arg("rng"));
    m.def("table_index", &table_index, py::arg("genotype"), py::arg("locus"), py::arg("epistasis"));
    m.def("neighbors", &neighbors, py::arg("genotype"));

    py::class_<Landscape>(m, "Landscape")
        .def(py::init<EpistasisMap, FitnessTable, WeightVector>(), py::arg("epistasis"), py::arg("tables"),
             py::arg("weights"))
        .def_static("generate", &Landscape::generate, py::arg("n"), py::arg("k"), py::arg("pattern"),
                    py::arg("weights"), py::arg("rng"))
        .def_property_readonly("n", &Landscape::n)
        .def_property_readonly("k", &Landscape::k)
        .def_property_readonly("epistasis", &Landscape::epistasis)
        .def_property_readonly("tables", &Landscape::tables)
        .def_property_readonly("weights", &Landscape::weights)
        .def("evaluate", &Landscape::evaluate, py::arg("genotype"))
        .def("contribution", &Landscape::contribution, py::arg("genotype"), py::arg("locus"));

    py::enum_<StrategyKind>(m, "StrategyKind")
        .value("first_improvement", StrategyKind::first_improvement)
        .value("steepest_ascent", StrategyKind::steepest_ascent)
        .value("long_jump", StrategyKind::long_jump);

    py::class_<SearchStrategy>(m, "SearchStrategy")
        .def(py::init([](StrategyKind kind, std::uint64_t max_evaluations, std::size_t jump_width) {
                 return SearchStrategy{kind, jump_width, max_evaluations};
             }),
             py::arg("kind"), py::arg("max_evaluations"), py::arg("jump_width") = 0)
        .def_readwrite("kind", &SearchStrategy::kind)
        .def_readwrite("jump_width", &SearchStrategy::jump_width)
        .def_readwrite("max_evaluations", &SearchStrategy::max_evaluations);

    py::class_<WalkStep>(m, "WalkStep")
        .def_readonly("genotype", &WalkStep::genotype)
        .def_readonly("fitness", &WalkStep::fitness);

    py::class_<WalkTrace>(m, "WalkTrace")
        .def_readonly("steps", &WalkTrace::steps)
        .def_readonly("terminated_at_local_optimum", &WalkTrace::terminated_at_local_optimum)
        .def_readonly("evaluations_used", &WalkTrace::evaluations_used)
        .def_property_readonly("moves", &WalkTrace::moves)
        .def_property_readonly("endpoint", &WalkTrace::endpoint);

    m.def("default_budget", &default_budget, py::arg("n"));
    m.def("adaptive_walk", &adaptive_walk, py::arg("landscape"), py::arg("start"), py::arg("strategy"), py::arg("rng"));
    m.def("first_improvement_walk", &first_improvement_walk, py::arg("landscape"), py::arg("start"),
          py::arg("max_evaluations"), py::arg("rng"));
    m.def("steepest_ascent_walk", &steepest_ascent_walk, py::arg("landscape"), py::arg("start"),
          py::arg("max_evaluations"));
    m.def("long_jump_walk", &long_jump_walk, py::arg("landscape"), py::arg("start"), py::arg("jump_width"),
          py::arg("max_evaluations"), py::arg("rng"));
    m.def("is_local_optimum", &is_local_optimum, py::arg("landscape"), py::arg("genotype"));

    py::class_<ScoredGenotype>(m, "ScoredGenotype")
        .def_readonly("genotype", &ScoredGenotype::genotype)
        .def_readonly("fitness", &ScoredGenotype::fitness);

    py::class_<LandscapeCensus>(m, "LandscapeCensus")
        .def_readonly("global_optimum", &LandscapeCensus::global_optimum)
        .def_readonly("local_optima", &LandscapeCensus::local_optima)
        .def_readonly("basin_sizes", &LandscapeCensus::basin_sizes);

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("mean", &Estimate::mean)
        .def_readonly("standard_error", &Estimate::standard_error);

    py::class_<CensusStatistics>(m, "CensusStatistics")
        .def_readonly("samples", &CensusStatistics::samples)
        .def_readonly("optima_count", &CensusStatistics::optima_count)
        .def_readonly("local_optimum_fitness", &CensusStatistics::local_optimum_fitness)
        .def_readonly("global_optimum_fitness", &CensusStatistics::global_optimum_fitness);

    m.def("enumerate_landscape", &enumerate, py::arg("landscape"));
    m.def("census", &census, py::arg("landscape"));
    m.def("census_statistics", &census_statistics, py::arg("n"), py::arg("k"), py::arg("weights"),
          py::arg("pattern"), py::arg("samples"), py::arg("rng"), py::call_guard<py::gil_scoped_release>());
    m.def("mean_local_optimum_fitness", &mean_local_optimum_fitness, py::arg("n"), py::arg("k"), py::arg("weights"),
          py::arg("pattern"), py::arg("samples"), py::arg("rng"), py::call_guard<py::gil_scoped_release>());

    py::enum_<LandscapeMode>(m, "LandscapeMode")
        .value("per_simulation", LandscapeMode::per_simulation)
        .value("fixed_per_run", LandscapeMode::fixed_per_run);

    py::class_<WeightSpec>(m, "WeightSpec")
        .def_static("equal", &WeightSpec::equal)
        .def_static("itdc", &WeightSpec::itdc)
        .def_static("from_betas", &WeightSpec::from_betas, py::arg("betas"))
        .def_static("parse", &WeightSpec::parse, py::arg("text"))
        .def("label", &WeightSpec::label)
        .def("resolve", &WeightSpec::resolve, py::arg("n"));

    py::enum_<StreamPurpose>(m, "StreamPurpose")
        .value("landscape", StreamPurpose::landscape)
        .value("start", StreamPurpose::start)
        .value("walk", StreamPurpose::walk);
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("k"), py::arg("run"), py::arg("sim"),
          py::arg("purpose"));
    m.def("derive_stream", &derive_stream, py::arg("master_seed"), py::arg("k"), py::arg("run"), py::arg("sim"),
          py::arg("purpose"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("k_values", &ExperimentConfig::k_values)
        .def_readwrite("runs", &ExperimentConfig::runs)
        .def_readwrite("sims_per_run", &ExperimentConfig::sims_per_run)
        .def_readwrite("weights", &ExperimentConfig::weights)
        .def_readwrite("pattern", &ExperimentConfig::pattern)
        .def_readwrite("landscape_mode", &ExperimentConfig::landscape_mode)
        .def_readwrite("strategy", &ExperimentConfig::strategy)
        .def_readwrite("jump_width", &ExperimentConfig::jump_width)
        .def_readwrite("max_evaluations", &ExperimentConfig::max_evaluations)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def("validate", &ExperimentConfig::validate)
        .def("search_strategy", &ExperimentConfig::search_strategy);

    py::class_<KSummary>(m, "KSummary")
        .def_readonly("k", &KSummary::k)
        .def_readonly("mean_endpoint_fitness", &KSummary::mean_endpoint_fitness)
        .def_readonly("stddev", &KSummary::stddev)
        .def_readonly("standard_error", &KSummary::standard_error)
        .def_readonly("mean_walk_moves", &KSummary::mean_walk_moves)
        .def_readonly("simulations", &KSummary::simulations)
        .def(py::self == py::self)
        .def("__repr__", [](const KSummary& s) {
            return "KSummary(k=" + std::to_string(s.k) + ", mean=" + std::to_string(s.mean_endpoint_fitness) + ")";
        });

    m.def("aggregate",
          [](std::size_t k, const std::vector<double>& fitness, const std::vector<std::uint64_t>& moves) {
              return aggregate(k, fitness, moves);
          },
          py::arg("k"), py::arg("endpoint_fitness"), py::arg("moves"));

    m.def("run_experiment",
          [](const ExperimentConfig& config, unsigned threads) { return run_experiment(config, {threads, false}).summaries; },
          py::arg("config"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    py::class_<LongJumpComparison>(m, "LongJumpComparison")
        .def_readonly("pairs", &LongJumpComparison::pairs)
        .def_readonly("first_improvement", &LongJumpComparison::first_improvement)
        .def_readonly("long_jump", &LongJumpComparison::long_jump)
        .def_readonly("difference", &LongJumpComparison::difference);
    m.def("compare_long_jump", &compare_long_jump, py::arg("n"), py::arg("k"), py::arg("weights"), py::arg("pattern"),
          py::arg("jump_width"), py::arg("pairs"), py::arg("master_seed"), py::call_guard<py::gil_scoped_release>());

    m.def("format_results",
          [](const ExperimentConfig& config, const std::vector<KSummary>& summaries, const std::string& format) {
              return format_results({RunDescription::from_config(config), summaries}, parse_format(format));
          },
          py::arg("config"), py::arg("summaries"), py::arg("format") = "csv");
    m.def("emit_plot",
          [](const std::vector<KSummary>& summaries, const std::filesystem::path& path) { emit_plot(summaries, path); },
          py::arg("summaries"), py::arg("path"));
}
