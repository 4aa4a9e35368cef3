#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nkland/cli.hpp"
#include "nkland/output.hpp"

using namespace nkland;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "nkland_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("simulate writes one CSV row per K") {
    const auto dir = scratch();
    const auto path = (dir / "results.csv").string();
    const auto r = invoke({"simulate", "--n", "5", "--k", "0,1,2,3,4", "--runs", "2", "--sims", "500", "--weights",
                           "itdc", "--seed", "42", "--out", path});
    REQUIRE(r.code == 0);
    const auto parsed = parse_results_csv(read_file(path));
    CHECK(parsed.summaries.size() == 5);
    CHECK(parsed.run.weights == "itdc");
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(parsed.summaries[k].k == k);
        CHECK(parsed.summaries[k].simulations == 1000);
    }
}

TEST_CASE("simulate is byte-identical across reruns") {
    const auto a = invoke({"simulate", "--n", "5", "--k", "0", "--runs", "1", "--sims", "1", "--seed", "7"});
    const auto b = invoke({"simulate", "--n", "5", "--k", "0", "--runs", "1", "--sims", "1", "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\n0,") != std::string::npos);
}

TEST_CASE("simulate emits JSON, plot, sidecar and records") {
    const auto dir = scratch();
    const auto r = invoke({"simulate", "--k", "1,2", "--runs", "1", "--sims", "50", "--format", "json", "--plot",
                           (dir / "fig.svg").string(), "--records", (dir / "rec.csv").string(), "--threads", "2",
                           "--pattern", "adjacent", "--landscape-mode", "fixed-per-run"});
    REQUIRE(r.code == 0);
    const auto parsed = parse_results_json(r.out);
    CHECK(parsed.summaries.size() == 2);
    CHECK(parsed.run.pattern == "adjacent");
    CHECK(parsed.run.landscape_mode == "fixed-per-run");
    CHECK(std::filesystem::exists(dir / "fig.svg"));
    CHECK(std::filesystem::exists(dir / "fig.tsv"));
    const auto records = read_file(dir / "rec.csv");
    CHECK(std::count(records.begin(), records.end(), '\n') == 101);
}

TEST_CASE("census reports the optima count") {
    const auto r = invoke({"census", "--n", "4", "--k", "3", "--samples", "1000", "--seed", "9"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["config"]["weights"] == "equal");
    CHECK(doc["random_landscape_optima_count"].get<double>() == doctest::Approx(3.2));
    CHECK(std::abs(doc["mean_optima_count"].get<double>() - 3.2) < 0.15);
}

TEST_CASE("walk prints a trace") {
    const auto r = invoke({"walk", "--n", "6", "--k", "2", "--start", "000000", "--strategy", "steepest", "--seed", "3"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["steps"][0]["genotype"] == "000000");
    CHECK(doc["terminated_at_local_optimum"] == true);

    const auto jump = invoke({"walk", "--strategy", "longjump", "--jump-width", "3", "--max-evaluations", "40"});
    REQUIRE(jump.code == 0);
    CHECK(nlohmann::json::parse(jump.out)["evaluations_used"] == 40);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"simulate", "--bogus"}).code == 2);
    CHECK(invoke({"simulate", "--k", "5"}).code == 2);
    CHECK(invoke({"simulate", "--n", "4"}).code == 2);  // default k list includes 4
    CHECK(invoke({"simulate", "--n", "4", "--sims", "1", "--runs", "1", "--k", "0,3"}).code == 0);
    CHECK(invoke({"simulate", "--n", "4", "--weights", "itdc"}).code == 2);
    CHECK(invoke({"simulate", "--weights", "1,2"}).code == 2);
    CHECK(invoke({"simulate", "--runs", "0"}).code == 2);
    CHECK(invoke({"simulate", "--strategy", "longjump", "--jump-width", "9"}).code == 2);
    CHECK(invoke({"simulate", "--format", "xml"}).code == 2);
    CHECK(invoke({"census", "--n", "21", "--k", "0"}).code == 2);
    CHECK(invoke({"walk", "--start", "0101"}).code == 2);
    const auto bad = invoke({"simulate", "--pattern", "ring"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("ring") != std::string::npos);
}

TEST_CASE("unwritable output exits with 1") {
    const auto r = invoke({"simulate", "--k", "0", "--runs", "1", "--sims", "1", "--out", "/nonexistent/dir/x.csv"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("help and version succeed") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"simulate", "--help"}).code == 0);
    CHECK(invoke({"--version"}).out == std::string(kToolVersion) + "\n");
}

TEST_CASE("the installed binary reports exit codes") {
    const std::string exe = NKLAND_CLI_PATH;
    CHECK(std::system((exe + " walk --n 3 --k 1 > /dev/null").c_str()) == 0);
    const int status = std::system((exe + " simulate --k 9 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
