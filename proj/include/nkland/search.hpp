#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "nkland/landscape.hpp"
#include "nkland/rng.hpp"

namespace nkland {

enum class StrategyKind { first_improvement, steepest_ascent, long_jump };

std::string_view to_string(StrategyKind kind) noexcept;
/// Accepts the CLI tokens first, steepest, longjump.
StrategyKind parse_strategy(std::string_view text);

/// Default per-walk evaluation cap, 100 * n.
constexpr std::uint64_t default_budget(std::size_t n) noexcept { return 100 * static_cast<std::uint64_t>(n); }

struct SearchStrategy {
    StrategyKind kind = StrategyKind::first_improvement;
    std::size_t jump_width = 0;  // long_jump only
    std::uint64_t max_evaluations = 1;

    static SearchStrategy first_improvement(std::uint64_t budget) { return {StrategyKind::first_improvement, 0, budget}; }
    static SearchStrategy steepest_ascent(std::uint64_t budget) { return {StrategyKind::steepest_ascent, 0, budget}; }
    static SearchStrategy long_jump(std::size_t width, std::uint64_t budget) { return {StrategyKind::long_jump, width, budget}; }

    /// Throws ParameterError if this strategy cannot run on an n-locus landscape.
    void validate(std::size_t n) const;
};

struct WalkStep {
    Genotype genotype;
    double fitness = 0.0;
};

/// Accepted points of a walk, start first. Fitness strictly increases.
/// evaluations_used counts candidate evaluations; the start is free.
struct WalkTrace {
    std::vector<WalkStep> steps;
    bool terminated_at_local_optimum = false;
    std::uint64_t evaluations_used = 0;

    std::size_t moves() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }
    const WalkStep& endpoint() const { return steps.back(); }
};

/// Runs the walk selected by `strategy.kind`.
WalkTrace adaptive_walk(const Landscape& landscape, const Genotype& start, const SearchStrategy& strategy,
                        RandomStream& rng);

/// Examines the 1-mutant neighbors in a fresh random order each step and
/// moves to the first strictly fitter one, until none is fitter or the
/// budget runs out.
WalkTrace first_improvement_walk(const Landscape& landscape, const Genotype& start,
                                 std::uint64_t max_evaluations, RandomStream& rng);

/// Moves to the fittest strictly-improving neighbor, lowest locus on ties.
WalkTrace steepest_ascent_walk(const Landscape& landscape, const Genotype& start,
                               std::uint64_t max_evaluations);

/// Proposes genotypes `jump_width` flips away (loci chosen uniformly) until
/// the budget is spent, accepting strict improvements only. The trace never
/// claims a local optimum.
WalkTrace long_jump_walk(const Landscape& landscape, const Genotype& start, std::size_t jump_width,
                         std::uint64_t max_evaluations, RandomStream& rng);

bool is_local_optimum(const Landscape& landscape, const Genotype& genotype);

}  // namespace nkland
