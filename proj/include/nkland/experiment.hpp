#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nkland/landscape.hpp"
#include "nkland/oracle.hpp"
#include "nkland/rng.hpp"
#include "nkland/search.hpp"

namespace nkland {

enum class LandscapeMode { per_simulation, fixed_per_run };

/// "per-sim" / "fixed-per-run".
std::string_view to_string(LandscapeMode mode) noexcept;
LandscapeMode parse_landscape_mode(std::string_view text);

/// How per-locus weights are chosen: Kauffman's equal weights, the five
/// ITDC path coefficients, or an explicit list of betas.
class WeightSpec {
public:
    enum class Kind { equal, itdc, betas };

    static WeightSpec equal() { return WeightSpec(Kind::equal, {}); }
    static WeightSpec itdc() { return WeightSpec(Kind::itdc, {kItdcBetas.begin(), kItdcBetas.end()}); }
    static WeightSpec from_betas(std::vector<double> betas);
    /// "equal", "itdc", or a comma-separated beta list.
    static WeightSpec parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    std::span<const double> betas() const noexcept { return betas_; }

    /// "equal", "itdc", or the betas joined by ';'.
    std::string label() const;
    /// Throws ParameterError when this selection cannot provide n weights.
    WeightVector resolve(std::size_t n) const;

    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

private:
    WeightSpec(Kind kind, std::vector<double> betas) : kind_(kind), betas_(std::move(betas)) {}
    Kind kind_;
    std::vector<double> betas_;
};

enum class StreamPurpose : std::uint64_t { landscape = 1, start = 2, walk = 3 };

/// Seed for one (k, run, simulation, purpose) slot. Each field is folded in
/// with the SplitMix64 finalizer:
///   h = mix64(master ^ C0); h = mix64(h ^ (field + Ci)) for k, run, sim, purpose.
/// Every step is a bijection, so tuples sharing a prefix never collide.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t k, std::uint64_t run, std::uint64_t sim,
                          StreamPurpose purpose) noexcept;

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t k, std::uint64_t run, std::uint64_t sim,
                           StreamPurpose purpose) noexcept;

struct ExperimentConfig {
    std::size_t n = 5;
    std::vector<std::size_t> k_values{0, 1, 2, 3, 4};
    std::size_t runs = 5;
    std::size_t sims_per_run = 10'000;
    WeightSpec weights = WeightSpec::itdc();
    EpistasisPattern pattern = EpistasisPattern::random;
    LandscapeMode landscape_mode = LandscapeMode::per_simulation;
    StrategyKind strategy = StrategyKind::first_improvement;
    std::size_t jump_width = 2;
    std::optional<std::uint64_t> max_evaluations;  // default_budget(n) when unset
    std::uint64_t master_seed = 42;

    /// Throws ParameterError describing the first invalid field.
    void validate() const;
    SearchStrategy search_strategy() const;
    std::uint64_t simulations_per_k() const noexcept {
        return static_cast<std::uint64_t>(runs) * sims_per_run;
    }
};

struct KSummary {
    std::size_t k = 0;
    double mean_endpoint_fitness = 0.0;
    double stddev = 0.0;
    double standard_error = 0.0;
    double mean_walk_moves = 0.0;
    std::uint64_t simulations = 0;

    friend bool operator==(const KSummary&, const KSummary&) = default;
};

/// Single-pass mean, population stddev, stddev/sqrt(count) and mean moves.
/// Throws ContractError on empty or mismatched input.
KSummary aggregate(std::size_t k, std::span<const double> endpoint_fitness,
                   std::span<const std::uint64_t> moves);

struct SimulationRecord {
    std::size_t k = 0;
    std::size_t run = 0;
    std::size_t sim = 0;
    Genotype start;
    Genotype endpoint;
    double fitness = 0.0;
    std::uint64_t moves = 0;
    std::uint64_t evaluations = 0;
};

struct RunOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
    bool keep_records = false;
};

struct ExperimentResult {
    std::vector<KSummary> summaries;       // one per config.k_values entry, same order
    std::vector<SimulationRecord> records;  // only with keep_records; (k, run, sim) order
};

/// For every k, runs runs x sims_per_run walks from uniform random starts
/// and aggregates the endpoints in ascending (run, sim) order. Results are
/// bit-identical for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// One simulation slot, exactly as run_experiment performs it. `shared`
/// supplies the run's landscape in fixed_per_run mode and is ignored otherwise.
SimulationRecord simulate(const ExperimentConfig& config, const WeightVector& weights, std::size_t k,
                          std::size_t run, std::size_t sim, const Landscape* shared = nullptr);

/// Paired first-improvement vs long-jump comparison. Each pair shares a
/// fresh landscape and start; the long-jump walk receives exactly the
/// number of evaluations the first-improvement walk used.
struct LongJumpComparison {
    std::size_t pairs = 0;
    Estimate first_improvement;
    Estimate long_jump;
    Estimate difference;  // first_improvement - long_jump, paired
};

LongJumpComparison compare_long_jump(std::size_t n, std::size_t k, const WeightSpec& weights,
                                     EpistasisPattern pattern, std::size_t jump_width, std::size_t pairs,
                                     std::uint64_t master_seed);

}  // namespace nkland
