#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nkland/landscape.hpp"
#include "nkland/rng.hpp"

namespace nkland {

inline constexpr std::size_t kMaxEnumerateLoci = 24;
inline constexpr std::size_t kMaxCensusLoci = 20;

struct ScoredGenotype {
    Genotype genotype;
    double fitness = 0.0;
};

/// Every genotype with its fitness, in ascending integer order.
/// Throws TractabilityError when n exceeds kMaxEnumerateLoci.
std::vector<ScoredGenotype> enumerate(const Landscape& landscape);

/// Ground truth for one landscape. basin_sizes[i] belongs to local_optima[i];
/// basins follow deterministic steepest ascent (lowest locus on ties).
struct LandscapeCensus {
    ScoredGenotype global_optimum;
    std::vector<ScoredGenotype> local_optima;  // ascending genotype order
    std::vector<std::uint64_t> basin_sizes;

    bool contains_local_optimum(const Genotype& genotype) const;
};

LandscapeCensus census(const Landscape& landscape);

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Statistics over many freshly drawn landscapes of the same shape.
struct CensusStatistics {
    std::size_t samples = 0;
    Estimate optima_count;
    Estimate local_optimum_fitness;  // per-landscape mean over its local optima
    Estimate global_optimum_fitness;
};

CensusStatistics census_statistics(std::size_t n, std::size_t k, const WeightVector& weights,
                                   EpistasisPattern pattern, std::size_t samples, RandomStream& rng);

/// Mean fitness of local optima across `samples` landscapes, with its standard error.
Estimate mean_local_optimum_fitness(std::size_t n, std::size_t k, const WeightVector& weights,
                                    EpistasisPattern pattern, std::size_t samples, RandomStream& rng);

/// 2^n / (n + 1): expected local-optimum count of a fully random landscape.
double expected_random_optima_count(std::size_t n);

}  // namespace nkland
