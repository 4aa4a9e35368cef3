#include "nkland/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nkland/errors.hpp"
#include "nkland/statistics.hpp"

namespace nkland {

namespace {

void check_tractable(std::size_t n, std::size_t limit, const char* what) {
    if (n > limit) {
        throw TractabilityError(std::string(what) + " supports at most " + std::to_string(limit) +
                                " loci (got " + std::to_string(n) + ")");
    }
}

// Fitness of every genotype, indexed by Genotype::to_index().
std::vector<double> fitness_by_index(const Landscape& landscape) {
    const std::size_t n = landscape.n();
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<double> fitness(size);
    for (std::uint64_t x = 0; x < size; ++x) fitness[x] = landscape.evaluate(Genotype::from_index(x, n));
    return fitness;
}

std::uint64_t locus_mask(std::size_t n, std::size_t locus) { return std::uint64_t{1} << (n - 1 - locus); }

}  // namespace

std::vector<ScoredGenotype> enumerate(const Landscape& landscape) {
    check_tractable(landscape.n(), kMaxEnumerateLoci, "enumerate");
    const std::size_t n = landscape.n();
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<ScoredGenotype> out;
    out.reserve(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        auto g = Genotype::from_index(x, n);
        const double f = landscape.evaluate(g);
        out.push_back({std::move(g), f});
    }
    return out;
}

bool LandscapeCensus::contains_local_optimum(const Genotype& genotype) const {
    return std::any_of(local_optima.begin(), local_optima.end(),
                       [&](const ScoredGenotype& s) { return s.genotype == genotype; });
}

LandscapeCensus census(const Landscape& landscape) {
    check_tractable(landscape.n(), kMaxCensusLoci, "census");
    const std::size_t n = landscape.n();
    const std::uint64_t size = std::uint64_t{1} << n;
    const auto fitness = fitness_by_index(landscape);

    // Steepest-ascent successor of every genotype; itself when it is a local optimum.
    std::vector<std::uint64_t> next(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        std::uint64_t best = x;
        for (std::size_t locus = 0; locus < n; ++locus) {
            const std::uint64_t y = x ^ locus_mask(n, locus);
            if (fitness[y] > fitness[best]) best = y;
        }
        next[x] = best;
    }

    LandscapeCensus result;
    std::vector<std::int64_t> optimum_slot(size, -1);
    std::uint64_t global = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
        if (fitness[x] > fitness[global]) global = x;
        if (next[x] == x) {
            optimum_slot[x] = static_cast<std::int64_t>(result.local_optima.size());
            result.local_optima.push_back({Genotype::from_index(x, n), fitness[x]});
        }
    }
    result.global_optimum = {Genotype::from_index(global, n), fitness[global]};
    result.basin_sizes.assign(result.local_optima.size(), 0);

    // Follow successors; memoize the terminal optimum of every genotype visited.
    std::vector<std::int64_t> terminal(size, -1);
    std::vector<std::uint64_t> path;
    for (std::uint64_t x = 0; x < size; ++x) {
        path.clear();
        std::uint64_t y = x;
        while (terminal[y] < 0 && next[y] != y) {
            path.push_back(y);
            y = next[y];
        }
        const std::int64_t slot = terminal[y] >= 0 ? terminal[y] : optimum_slot[y];
        terminal[y] = slot;
        for (auto p : path) terminal[p] = slot;
        ++result.basin_sizes[static_cast<std::size_t>(terminal[x])];
    }
    return result;
}

CensusStatistics census_statistics(std::size_t n, std::size_t k, const WeightVector& weights,
                                   EpistasisPattern pattern, std::size_t samples, RandomStream& rng) {
    check_tractable(n, kMaxCensusLoci, "census");
    if (samples == 0) throw ParameterError("samples must be at least 1");
    RunningStats count, local, global;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto landscape = Landscape::generate(n, k, pattern, weights, rng);
        const auto c = census(landscape);
        double sum = 0.0;
        for (const auto& opt : c.local_optima) sum += opt.fitness;
        count.push(static_cast<double>(c.local_optima.size()));
        local.push(sum / static_cast<double>(c.local_optima.size()));
        global.push(c.global_optimum.fitness);
    }
    return {samples,
            {count.mean(), count.standard_error()},
            {local.mean(), local.standard_error()},
            {global.mean(), global.standard_error()}};
}

Estimate mean_local_optimum_fitness(std::size_t n, std::size_t k, const WeightVector& weights,
                                    EpistasisPattern pattern, std::size_t samples, RandomStream& rng) {
    return census_statistics(n, k, weights, pattern, samples, rng).local_optimum_fitness;
}

double expected_random_optima_count(std::size_t n) {
    return std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(n + 1);
}

}  // namespace nkland
