#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nkland/errors.hpp"
#include "nkland/output.hpp"

using namespace nkland;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::size_t count_of(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

ResultSet sample_results(std::size_t rows, std::uint64_t seed) {
    ExperimentConfig config;
    config.master_seed = seed;
    ResultSet set{RunDescription::from_config(config), {}};
    RandomStream rng(seed);
    for (std::size_t k = 0; k < rows; ++k) {
        set.summaries.push_back({k, rng.uniform01(), rng.uniform01() / 7, rng.uniform01() / 1000,
                                 rng.uniform01() * 4, rng.below(100'000) + 1});
    }
    return set;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("CSV layout") {
    const auto set = sample_results(1, 3);
    const auto csv = format_results(set, OutputFormat::csv);
    CHECK(count_lines(csv) == 2);
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(csv.find(",42,") == std::string::npos);
    CHECK(csv.find(",3,5,itdc,random,per-sim,first\n") != std::string::npos);

    ResultSet exact{set.run, {{2, 0.1, 0.0, 0.0, 1.5, 10}}};
    CHECK(format_results(exact, OutputFormat::csv).find("\n2,0.10000000000000001,0,0,1.5,10,") != std::string::npos);
}

TEST_CASE("results round-trip through CSV and JSON") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto set = sample_results(1 + seed % 6, seed);
        const auto json = parse_results_json(format_results(set, OutputFormat::json));
        CHECK(json.run == set.run);
        CHECK(json.summaries == set.summaries);

        const auto csv = parse_results_csv(format_results(set, OutputFormat::csv));
        CHECK(csv.summaries == set.summaries);
        CHECK(csv.run.seed == set.run.seed);
        CHECK(csv.run.weights == set.run.weights);
        CHECK(csv.run.strategy == set.run.strategy);
    }
}

TEST_CASE("malformed inputs are rejected") {
    CHECK_THROWS_AS(format_results(ResultSet{}, OutputFormat::csv), ContractError);
    CHECK_THROWS_AS(parse_results_csv("k,mean\n1,2\n"), ParameterError);
    CHECK_THROWS_AS(parse_results_json("{\"results\": []}"), ParameterError);
    CHECK_THROWS_AS(parse_format("xml"), ParameterError);
}

TEST_CASE("plot rendering") {
    const std::vector<KSummary> five{{0, 0.667, 0.1, 0.001, 1.0, 10},
                                     {1, 0.690, 0.1, 0.001, 1.0, 10},
                                     {2, 0.700, 0.1, 0.001, 1.0, 10},
                                     {3, 0.694, 0.1, 0.001, 1.0, 10},
                                     {4, 0.682, 0.1, 0.001, 1.0, 10}};
    const auto svg = render_plot_svg(five);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count_of(svg, "<polyline") == 1);
    CHECK(count_of(svg, "class=\"marker") == 5);
    CHECK(count_of(svg, "class=\"errorbar\"") == 5);
    CHECK(svg.find("class=\"marker peak\" data-k=\"2\"") != std::string::npos);

    const std::vector<KSummary> one{{3, 0.5, 0.1, 0.01, 2.0, 4}};
    const auto single = render_plot_svg(one);
    CHECK(count_of(single, "class=\"marker") == 1);
    CHECK(count_of(single, "<polyline") == 0);

    const auto sidecar = render_plot_sidecar(five);
    CHECK(count_lines(sidecar) == five.size());
    CHECK(sidecar.rfind("0\t0.66700000000000004\t0.001\n", 0) == 0);
    CHECK_THROWS_AS(render_plot_svg(std::vector<KSummary>{}), ContractError);
}

TEST_CASE("files are written, and unwritable paths raise IoError") {
    const auto dir = std::filesystem::temp_directory_path() / "nkland_output_test";
    std::filesystem::create_directories(dir);
    const auto set = sample_results(5, 11);
    write_results(set, OutputFormat::json, dir / "r.json");
    CHECK(parse_results_json(read_file(dir / "r.json")).summaries == set.summaries);

    emit_plot(set.summaries, dir / "fig.svg");
    CHECK(std::filesystem::exists(dir / "fig.svg"));
    CHECK(sidecar_path(dir / "fig.svg") == dir / "fig.tsv");
    CHECK(count_lines(read_file(dir / "fig.tsv")) == 5);

    CHECK_THROWS_AS(write_results(set, OutputFormat::csv, dir / "missing" / "r.csv"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("audit records") {
    const std::vector<SimulationRecord> records{{2, 0, 1, Genotype::parse("00101"), Genotype::parse("01101"), 0.5, 1, 9}};
    CHECK(format_records(records) == "k,run,sim,start,endpoint,fitness,moves,evaluations\n2,0,1,00101,01101,0.5,1,9\n");
}
