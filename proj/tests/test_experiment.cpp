#include <doctest.h>

#include <set>
#include <unordered_set>

#include "nkland/errors.hpp"
#include "nkland/experiment.hpp"
#include "nkland/statistics.hpp"

using namespace nkland;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.k_values = {0, 2, 4};
    c.runs = 2;
    c.sims_per_run = 700;
    c.master_seed = 5;
    return c;
}

}  // namespace

TEST_CASE("derive_stream determinism and separation") {
    auto a = derive_stream(42, 0, 0, 0, StreamPurpose::walk);
    auto b = derive_stream(42, 0, 0, 0, StreamPurpose::walk);
    auto c = derive_stream(42, 0, 0, 1, StreamPurpose::walk);
    auto d = derive_stream(42, 0, 0, 0, StreamPurpose::start);
    bool differs_sim = false, differs_purpose = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next();
        CHECK(va == b.next());
        differs_sim = differs_sim || va != c.next();
        differs_purpose = differs_purpose || va != d.next();
    }
    CHECK(differs_sim);
    CHECK(differs_purpose);
}

TEST_CASE("derived seeds are distinct over a full-size study tuple set") {
    std::unordered_set<std::uint64_t> seeds;
    seeds.reserve(800'000);
    std::size_t tuples = 0;
    for (std::uint64_t k = 0; k < 5; ++k) {
        for (std::uint64_t run = 0; run < 5; ++run) {
            for (std::uint64_t sim = 0; sim < 10'000; ++sim) {
                for (auto p : {StreamPurpose::landscape, StreamPurpose::start, StreamPurpose::walk}) {
                    seeds.insert(derive_seed(42, k, run, sim, p));
                    ++tuples;
                }
            }
        }
    }
    CHECK(seeds.size() == tuples);
}

TEST_CASE("aggregate") {
    const std::vector<double> two{0.5, 0.7};
    const std::vector<std::uint64_t> moves{1, 3};
    const auto s = aggregate(3, two, moves);
    CHECK(s.k == 3);
    CHECK(s.mean_endpoint_fitness == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(s.stddev == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s.standard_error == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s.mean_walk_moves == 2.0);
    CHECK(s.simulations == 2);

    const std::vector<double> constant(17, 0.42);
    const std::vector<std::uint64_t> zeros(17, 0);
    CHECK(aggregate(0, constant, zeros).stddev == 0.0);

    CHECK_THROWS_AS(aggregate(0, std::vector<double>{}, std::vector<std::uint64_t>{}), ContractError);
    CHECK_THROWS_AS(aggregate(0, two, zeros), ContractError);

    RandomStream rng(77);
    std::vector<double> uniforms(1'000'000);
    for (auto& u : uniforms) u = rng.uniform01();
    const auto big = aggregate(0, uniforms, std::vector<std::uint64_t>(uniforms.size(), 0));
    CHECK(std::abs(big.mean_endpoint_fitness - 0.5) < 3 * big.standard_error);
}

TEST_CASE("weight spec parsing") {
    CHECK(WeightSpec::parse("itdc") == WeightSpec::itdc());
    CHECK(WeightSpec::parse("equal").label() == "equal");
    const auto custom = WeightSpec::parse("3,1");
    CHECK(custom.kind() == WeightSpec::Kind::betas);
    CHECK(custom.label() == "3;1");
    CHECK(custom.resolve(2)[0] == 0.75);
    CHECK_THROWS_AS(custom.resolve(3), ParameterError);
    CHECK_THROWS_AS(WeightSpec::itdc().resolve(4), ParameterError);
    CHECK_THROWS_AS(WeightSpec::parse("1,,2"), ParameterError);
    CHECK_THROWS_AS(WeightSpec::parse("1,-2"), ParameterError);
    CHECK_THROWS_AS(WeightSpec::parse("heavy"), ParameterError);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.search_strategy().max_evaluations == 500);
    c.k_values = {0, 5};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = ExperimentConfig{};
    c.runs = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = ExperimentConfig{};
    c.sims_per_run = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = ExperimentConfig{};
    c.strategy = StrategyKind::long_jump;
    c.jump_width = 6;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = ExperimentConfig{};
    c.k_values.clear();
    CHECK_THROWS_AS(run_experiment(c), ParameterError);
}

TEST_CASE("single simulation reproduces bit for bit") {
    ExperimentConfig c;
    c.k_values = {0};
    c.runs = 1;
    c.sims_per_run = 1;
    c.master_seed = 7;
    const auto a = run_experiment(c, {1, true});
    const auto b = run_experiment(c, {1, true});
    REQUIRE(a.records.size() == 1);
    CHECK(a.summaries == b.summaries);
    CHECK(a.records[0].endpoint == b.records[0].endpoint);
    CHECK(a.records[0].fitness == b.records[0].fitness);
    CHECK(a.summaries[0].simulations == 1);
    CHECK(a.summaries[0].stddev == 0.0);
}

TEST_CASE("results do not depend on the thread count") {
    for (auto mode : {LandscapeMode::per_simulation, LandscapeMode::fixed_per_run}) {
        auto c = small_config();
        c.landscape_mode = mode;
        const auto serial = run_experiment(c, {1, true});
        const auto parallel = run_experiment(c, {4, true});
        CHECK(serial.summaries == parallel.summaries);
        REQUIRE(serial.records.size() == parallel.records.size());
        for (std::size_t i = 0; i < serial.records.size(); ++i) {
            CHECK(serial.records[i].endpoint == parallel.records[i].endpoint);
        }
        for (const auto& s : serial.summaries) CHECK(s.simulations == c.simulations_per_k());
    }
}

TEST_CASE("records follow (k, run, sim) order and match simulate") {
    auto c = small_config();
    c.sims_per_run = 50;
    const auto result = run_experiment(c, {3, true});
    REQUIRE(result.records.size() == 3 * 2 * 50);
    const auto w = c.weights.resolve(c.n);
    std::size_t i = 0;
    for (auto k : c.k_values) {
        for (std::size_t run = 0; run < c.runs; ++run) {
            for (std::size_t sim = 0; sim < c.sims_per_run; ++sim, ++i) {
                const auto& r = result.records[i];
                CHECK(r.k == k);
                CHECK(r.run == run);
                CHECK(r.sim == sim);
                if (sim % 17 == 0) CHECK(simulate(c, w, k, run, sim).fitness == r.fitness);
            }
        }
    }
}

TEST_CASE("fixed_per_run shares one landscape per run") {
    auto c = small_config();
    c.k_values = {3};
    c.landscape_mode = LandscapeMode::fixed_per_run;
    c.sims_per_run = 400;
    const auto result = run_experiment(c, {2, true});
    const auto w = c.weights.resolve(c.n);
    for (std::size_t run = 0; run < c.runs; ++run) {
        auto stream = derive_stream(c.master_seed, 3, run, 0, StreamPurpose::landscape);
        const auto optima = census(Landscape::generate(c.n, 3, c.pattern, w, stream));
        for (const auto& r : result.records) {
            if (r.run == run) CHECK(optima.contains_local_optimum(r.endpoint));
        }
    }
    auto per_sim = c;
    per_sim.landscape_mode = LandscapeMode::per_simulation;
    CHECK_FALSE(run_experiment(per_sim).summaries == result.summaries);
}

TEST_CASE("K = 0 with equal weights converges to 2/3") {
    ExperimentConfig c;
    c.k_values = {0};
    c.runs = 5;
    c.sims_per_run = 10'000;
    c.weights = WeightSpec::equal();
    const auto s = run_experiment(c).summaries.at(0);
    CHECK(s.simulations == 50'000);
    CHECK(std::abs(s.mean_endpoint_fitness - 2.0 / 3.0) < 3 * s.standard_error);
}

TEST_CASE("long jumps do worse than local search on matched budgets") {
    const auto cmp = compare_long_jump(5, 2, WeightSpec::equal(), EpistasisPattern::random, 2, 2000, 9);
    CHECK(cmp.pairs == 2000);
    CHECK(cmp.long_jump.mean <= cmp.first_improvement.mean);
    CHECK(cmp.difference.mean == doctest::Approx(cmp.first_improvement.mean - cmp.long_jump.mean).epsilon(1e-9));
}
