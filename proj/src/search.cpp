#include "nkland/search.hpp"

#include <numeric>
#include <string>

#include "nkland/errors.hpp"

namespace nkland {

namespace {

void check_start(const Landscape& landscape, const Genotype& start, std::uint64_t max_evaluations) {
    if (start.size() != landscape.n()) throw ContractError("start genotype length does not match landscape n");
    if (max_evaluations < landscape.n()) {
        throw ParameterError("evaluation budget must be at least n (got " + std::to_string(max_evaluations) + ")");
    }
}

}  // namespace

std::string_view to_string(StrategyKind kind) noexcept {
    switch (kind) {
        case StrategyKind::first_improvement: return "first";
        case StrategyKind::steepest_ascent: return "steepest";
        case StrategyKind::long_jump: return "longjump";
    }
    return "unknown";
}

StrategyKind parse_strategy(std::string_view text) {
    if (text == "first") return StrategyKind::first_improvement;
    if (text == "steepest") return StrategyKind::steepest_ascent;
    if (text == "longjump") return StrategyKind::long_jump;
    throw ParameterError("unknown search strategy '" + std::string(text) + "'");
}

void SearchStrategy::validate(std::size_t n) const {
    if (max_evaluations < 1) throw ParameterError("max_evaluations must be at least 1");
    if (max_evaluations < n) throw ParameterError("max_evaluations must be at least n");
    if (kind == StrategyKind::long_jump && (jump_width < 2 || jump_width > n)) {
        throw ParameterError("jump width must lie in 2..n (got " + std::to_string(jump_width) + ")");
    }
}

WalkTrace adaptive_walk(const Landscape& landscape, const Genotype& start, const SearchStrategy& strategy,
                        RandomStream& rng) {
    strategy.validate(landscape.n());
    switch (strategy.kind) {
        case StrategyKind::first_improvement:
            return first_improvement_walk(landscape, start, strategy.max_evaluations, rng);
        case StrategyKind::steepest_ascent:
            return steepest_ascent_walk(landscape, start, strategy.max_evaluations);
        case StrategyKind::long_jump:
            return long_jump_walk(landscape, start, strategy.jump_width, strategy.max_evaluations, rng);
    }
    throw ParameterError("unknown strategy kind");
}

WalkTrace first_improvement_walk(const Landscape& landscape, const Genotype& start,
                                 std::uint64_t max_evaluations, RandomStream& rng) {
    check_start(landscape, start, max_evaluations);
    const std::size_t n = landscape.n();
    WalkTrace trace;
    trace.steps.push_back({start, landscape.evaluate(start)});
    trace.evaluations_used = 0;

    std::vector<std::size_t> order(n);
    for (;;) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.below(i));
            std::swap(order[i - 1], order[j]);
        }
        const WalkStep& current = trace.steps.back();
        bool moved = false;
        for (std::size_t locus : order) {
            if (trace.evaluations_used >= max_evaluations) return trace;
            Genotype candidate = current.genotype.flipped(locus);
            const double fitness = landscape.evaluate(candidate);
            ++trace.evaluations_used;
            if (fitness > current.fitness) {
                trace.steps.push_back({std::move(candidate), fitness});
                moved = true;
                break;
            }
        }
        if (!moved) {
            trace.terminated_at_local_optimum = true;
            return trace;
        }
    }
}

WalkTrace steepest_ascent_walk(const Landscape& landscape, const Genotype& start,
                               std::uint64_t max_evaluations) {
    check_start(landscape, start, max_evaluations);
    const std::size_t n = landscape.n();
    WalkTrace trace;
    trace.steps.push_back({start, landscape.evaluate(start)});
    trace.evaluations_used = 0;

    for (;;) {
        const WalkStep& current = trace.steps.back();
        double best_fitness = current.fitness;
        std::size_t best_locus = n;
        for (std::size_t locus = 0; locus < n; ++locus) {
            if (trace.evaluations_used >= max_evaluations) return trace;
            const double fitness = landscape.evaluate(current.genotype.flipped(locus));
            ++trace.evaluations_used;
            if (fitness > best_fitness) {
                best_fitness = fitness;
                best_locus = locus;
            }
        }
        if (best_locus == n) {
            trace.terminated_at_local_optimum = true;
            return trace;
        }
        trace.steps.push_back({current.genotype.flipped(best_locus), best_fitness});
    }
}

WalkTrace long_jump_walk(const Landscape& landscape, const Genotype& start, std::size_t jump_width,
                         std::uint64_t max_evaluations, RandomStream& rng) {
    const std::size_t n = landscape.n();
    if (jump_width < 2 || jump_width > n) {
        throw ParameterError("jump width must lie in 2..n (got " + std::to_string(jump_width) + ")");
    }
    check_start(landscape, start, max_evaluations);
    WalkTrace trace;
    trace.steps.push_back({start, landscape.evaluate(start)});
    trace.evaluations_used = 0;

    std::vector<std::size_t> loci(n);
    while (trace.evaluations_used < max_evaluations) {
        std::iota(loci.begin(), loci.end(), std::size_t{0});
        Genotype candidate = trace.steps.back().genotype;
        for (std::size_t j = 0; j < jump_width; ++j) {
            const auto pick = j + static_cast<std::size_t>(rng.below(n - j));
            std::swap(loci[j], loci[pick]);
            candidate.flip(loci[j]);
        }
        const double fitness = landscape.evaluate(candidate);
        ++trace.evaluations_used;
        if (fitness > trace.steps.back().fitness) trace.steps.push_back({std::move(candidate), fitness});
    }
    return trace;
}

bool is_local_optimum(const Landscape& landscape, const Genotype& genotype) {
    const double fitness = landscape.evaluate(genotype);
    for (std::size_t locus = 0; locus < genotype.size(); ++locus) {
        if (landscape.evaluate(genotype.flipped(locus)) > fitness) return false;
    }
    return true;
}

}  // namespace nkland
