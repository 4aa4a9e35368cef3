#include "nkland/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "nkland/errors.hpp"
#include "nkland/statistics.hpp"

namespace nkland {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw ParameterError("not a number: '" + std::string(token) + "'");
    return v;
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) across workers; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    constexpr std::size_t kChunk = 256;
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t begin = cursor.fetch_add(kChunk);
                if (begin >= count) return;
                const std::size_t end = std::min(count, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            cursor.store(count);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(LandscapeMode mode) noexcept {
    return mode == LandscapeMode::per_simulation ? "per-sim" : "fixed-per-run";
}

LandscapeMode parse_landscape_mode(std::string_view text) {
    if (text == "per-sim" || text == "per_simulation") return LandscapeMode::per_simulation;
    if (text == "fixed-per-run" || text == "fixed_per_run") return LandscapeMode::fixed_per_run;
    throw ParameterError("unknown landscape mode '" + std::string(text) + "'");
}

WeightSpec WeightSpec::from_betas(std::vector<double> betas) {
    (void)make_weight_vector(betas);
    return WeightSpec(Kind::betas, std::move(betas));
}

WeightSpec WeightSpec::parse(std::string_view text) {
    if (text == "equal") return equal();
    if (text == "itdc") return itdc();
    std::vector<double> betas;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto token = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        betas.push_back(parse_double(token));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return from_betas(std::move(betas));
}

std::string WeightSpec::label() const {
    switch (kind_) {
        case Kind::equal: return "equal";
        case Kind::itdc: return "itdc";
        case Kind::betas: break;
    }
    std::string out;
    for (std::size_t i = 0; i < betas_.size(); ++i) {
        if (i > 0) out += ';';
        out += format_double(betas_[i]);
    }
    return out;
}

WeightVector WeightSpec::resolve(std::size_t n) const {
    if (kind_ == Kind::equal) return WeightVector::equal(n);
    if (betas_.size() != n) {
        throw ParameterError("weights '" + label() + "' provide " + std::to_string(betas_.size()) +
                             " betas but n=" + std::to_string(n));
    }
    return make_weight_vector(betas_);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t k, std::uint64_t run, std::uint64_t sim,
                          StreamPurpose purpose) noexcept {
    std::uint64_t h = mix64(master_seed ^ 0x6a09e667f3bcc908ULL);
    h = mix64(h ^ (k + 0xbb67ae8584caa73bULL));
    h = mix64(h ^ (run + 0x3c6ef372fe94f82bULL));
    h = mix64(h ^ (sim + 0xa54ff53a5f1d36f1ULL));
    h = mix64(h ^ (static_cast<std::uint64_t>(purpose) + 0x510e527fade682d1ULL));
    return h;
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t k, std::uint64_t run, std::uint64_t sim,
                           StreamPurpose purpose) noexcept {
    return RandomStream(derive_seed(master_seed, k, run, sim, purpose));
}

void ExperimentConfig::validate() const {
    if (n == 0) throw ParameterError("n must be at least 1");
    if (n > 64) throw ParameterError("n must be at most 64");
    if (k_values.empty()) throw ParameterError("at least one k value is required");
    for (auto k : k_values) {
        if (k > n - 1) {
            throw ParameterError("k=" + std::to_string(k) + " outside 0..n-1 for n=" + std::to_string(n));
        }
    }
    if (runs == 0) throw ParameterError("runs must be at least 1");
    if (sims_per_run == 0) throw ParameterError("sims_per_run must be at least 1");
    (void)weights.resolve(n);
    search_strategy().validate(n);
}

SearchStrategy ExperimentConfig::search_strategy() const {
    return {strategy, strategy == StrategyKind::long_jump ? jump_width : 0,
            max_evaluations.value_or(default_budget(n))};
}

KSummary aggregate(std::size_t k, std::span<const double> endpoint_fitness,
                   std::span<const std::uint64_t> moves) {
    if (endpoint_fitness.empty()) throw ContractError("aggregate needs at least one sample");
    if (moves.size() != endpoint_fitness.size()) throw ContractError("aggregate: fitness and move counts differ in length");
    RunningStats fitness;
    for (double f : endpoint_fitness) fitness.push(f);
    RunningStats walk;
    for (auto m : moves) walk.push(static_cast<double>(m));
    return {k, fitness.mean(), fitness.stddev(), fitness.standard_error(), walk.mean(), fitness.count()};
}

SimulationRecord simulate(const ExperimentConfig& config, const WeightVector& weights, std::size_t k,
                          std::size_t run, std::size_t sim, const Landscape* shared) {
    const auto seed = config.master_seed;
    std::optional<Landscape> own;
    const Landscape* landscape = shared;
    if (config.landscape_mode == LandscapeMode::per_simulation || landscape == nullptr) {
        auto stream = derive_stream(seed, k, run,
                                    config.landscape_mode == LandscapeMode::per_simulation ? sim : 0,
                                    StreamPurpose::landscape);
        own.emplace(Landscape::generate(config.n, k, config.pattern, weights, stream));
        landscape = &*own;
    }
    auto start_stream = derive_stream(seed, k, run, sim, StreamPurpose::start);
    auto start = Genotype::random(config.n, start_stream);
    auto walk_stream = derive_stream(seed, k, run, sim, StreamPurpose::walk);
    auto trace = adaptive_walk(*landscape, start, config.search_strategy(), walk_stream);
    const auto& end = trace.endpoint();
    return {k, run, sim, std::move(start), end.genotype, end.fitness, trace.moves(), trace.evaluations_used};
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const auto weights = config.weights.resolve(config.n);
    const unsigned threads = resolve_threads(options.threads);
    const std::size_t total = config.runs * config.sims_per_run;

    ExperimentResult result;
    result.summaries.reserve(config.k_values.size());
    if (options.keep_records) result.records.reserve(total * config.k_values.size());

    std::vector<SimulationRecord> slots(total);
    std::vector<double> fitness(total);
    std::vector<std::uint64_t> moves(total);
    for (auto k : config.k_values) {
        std::vector<Landscape> per_run;
        if (config.landscape_mode == LandscapeMode::fixed_per_run) {
            per_run.reserve(config.runs);
            for (std::size_t run = 0; run < config.runs; ++run) {
                auto stream = derive_stream(config.master_seed, k, run, 0, StreamPurpose::landscape);
                per_run.push_back(Landscape::generate(config.n, k, config.pattern, weights, stream));
            }
        }
        parallel_for(total, threads, [&](std::size_t i) {
            const std::size_t run = i / config.sims_per_run;
            const std::size_t sim = i % config.sims_per_run;
            const Landscape* shared = per_run.empty() ? nullptr : &per_run[run];
            slots[i] = simulate(config, weights, k, run, sim, shared);
        });
        for (std::size_t i = 0; i < total; ++i) {
            fitness[i] = slots[i].fitness;
            moves[i] = slots[i].moves;
        }
        result.summaries.push_back(aggregate(k, fitness, moves));
        if (options.keep_records) {
            std::move(slots.begin(), slots.end(), std::back_inserter(result.records));
            slots.assign(total, SimulationRecord{});
        }
    }
    return result;
}

LongJumpComparison compare_long_jump(std::size_t n, std::size_t k, const WeightSpec& weights,
                                     EpistasisPattern pattern, std::size_t jump_width, std::size_t pairs,
                                     std::uint64_t master_seed) {
    if (pairs == 0) throw ParameterError("pairs must be at least 1");
    const auto phi = weights.resolve(n);
    SearchStrategy::long_jump(jump_width, default_budget(n)).validate(n);
    RunningStats local, jump, diff;
    for (std::size_t i = 0; i < pairs; ++i) {
        auto landscape_stream = derive_stream(master_seed, k, 0, i, StreamPurpose::landscape);
        const auto landscape = Landscape::generate(n, k, pattern, phi, landscape_stream);
        auto start_stream = derive_stream(master_seed, k, 0, i, StreamPurpose::start);
        const auto start = Genotype::random(n, start_stream);

        auto walk_stream = derive_stream(master_seed, k, 0, i, StreamPurpose::walk);
        const auto local_trace = first_improvement_walk(landscape, start, default_budget(n), walk_stream);
        // The long jump gets the same number of evaluations; at least n, the walk API minimum.
        const auto budget = std::max<std::uint64_t>(local_trace.evaluations_used, n);
        auto jump_stream = derive_stream(master_seed, k, 1, i, StreamPurpose::walk);
        const auto jump_trace = long_jump_walk(landscape, start, jump_width, budget, jump_stream);

        local.push(local_trace.endpoint().fitness);
        jump.push(jump_trace.endpoint().fitness);
        diff.push(local_trace.endpoint().fitness - jump_trace.endpoint().fitness);
    }
    return {pairs,
            {local.mean(), local.standard_error()},
            {jump.mean(), jump.standard_error()},
            {diff.mean(), diff.standard_error()}};
}

}  // namespace nkland
