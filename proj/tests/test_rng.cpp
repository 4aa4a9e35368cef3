#include <doctest.h>

#include <cstdint>
#include <vector>

#include "nkland/rng.hpp"
#include "nkland/statistics.hpp"

using namespace nkland;

TEST_CASE("splitmix64 reproduces the reference sequence") {
    SplitMix64 g(1234567);
    CHECK(g.next() == 6457827717110365317ULL);
    CHECK(g.next() == 3203168211198807973ULL);
    CHECK(g.next() == 9817491932198370423ULL);
}

TEST_CASE("xoshiro256** stream is frozen") {
    // Computed with an independent Python transcription of the reference C code.
    RandomStream rng(42);
    CHECK(rng.next() == 1546998764402558742ULL);
    CHECK(rng.next() == 6990951692964543102ULL);
    CHECK(rng.next() == 12544586762248559009ULL);
    CHECK(rng.next() == 17057574109182124193ULL);

    RandomStream again(42);
    CHECK(again.uniform01() == 0.08386297105988216);
}

TEST_CASE("uniform01 stays in [0, 1) and has mean 1/2") {
    RandomStream rng(2024);
    RunningStats stats;
    for (int i = 0; i < 1'000'000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        stats.push(u);
    }
    CHECK(std::abs(stats.mean() - 0.5) < 3 * stats.standard_error());
}

TEST_CASE("below is unbiased over a small range") {
    RandomStream rng(7);
    std::vector<int> counts(5, 0);
    constexpr int draws = 500'000;
    for (int i = 0; i < draws; ++i) ++counts[rng.below(5)];
    // binomial sd = sqrt(draws * 0.2 * 0.8) ~ 283; allow 5 sd
    for (int c : counts) CHECK(std::abs(c - draws / 5) < 1415);
}

TEST_CASE("running stats on two points") {
    RunningStats s;
    s.push(0.5);
    s.push(0.7);
    CHECK(s.mean() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(s.stddev() == doctest::Approx(0.1).epsilon(1e-12));
}
