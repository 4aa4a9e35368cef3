#include "nkland/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nkland/errors.hpp"

namespace nkland {

namespace {

constexpr std::size_t kMaxTableK = 30;

std::size_t rows_for(std::size_t k) {
    if (k > kMaxTableK) throw ParameterError("k too large for explicit fitness tables");
    return std::size_t{1} << (k + 1);
}

void check_nk(std::size_t n, std::size_t k) {
    if (n == 0) throw ParameterError("n must be at least 1");
    if (k > n - 1) {
        throw ParameterError("k must lie in 0..n-1 (got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n) + ")");
    }
}

}  // namespace

Genotype::Genotype(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw ParameterError("genotype bits must be 0 or 1");
    }
}

Genotype Genotype::parse(std::string_view text) {
    if (text.empty()) throw ParameterError("empty genotype string");
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParameterError("genotype string may only contain 0 and 1: '" + std::string(text) + "'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Genotype(std::move(bits));
}

Genotype Genotype::from_index(std::uint64_t value, std::size_t n) {
    if (n > 64) throw ParameterError("from_index supports at most 64 loci");
    if (n < 64 && (value >> n) != 0) throw ParameterError("index does not fit in n bits");
    Genotype g(n);
    for (std::size_t i = 0; i < n; ++i) g.bits_[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1U);
    return g;
}

Genotype Genotype::random(std::size_t n, RandomStream& rng) {
    Genotype g(n);
    for (auto& b : g.bits_) b = rng.bit() ? 1 : 0;
    return g;
}

std::uint64_t Genotype::to_index() const {
    if (bits_.size() > 64) throw ContractError("to_index supports at most 64 loci");
    std::uint64_t value = 0;
    for (auto b : bits_) value = (value << 1) | b;
    return value;
}

std::string Genotype::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::size_t hamming_distance(const Genotype& a, const Genotype& b) {
    if (a.size() != b.size()) throw ContractError("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

std::string_view to_string(EpistasisPattern pattern) noexcept {
    return pattern == EpistasisPattern::random ? "random" : "adjacent";
}

EpistasisPattern parse_pattern(std::string_view text) {
    if (text == "random") return EpistasisPattern::random;
    if (text == "adjacent") return EpistasisPattern::adjacent;
    throw ParameterError("unknown epistasis pattern '" + std::string(text) + "'");
}

EpistasisMap::EpistasisMap(std::vector<std::vector<std::size_t>> partners)
    : partners_(std::move(partners)) {
    const std::size_t n = partners_.size();
    if (n == 0) throw ParameterError("epistasis map needs at least one locus");
    k_ = partners_.front().size();
    check_nk(n, k_);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& list = partners_[i];
        if (list.size() != k_) throw ParameterError("every locus needs exactly k partners");
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (list[j] >= n) throw ParameterError("partner index out of range");
            if (list[j] == i) throw ParameterError("a locus cannot be its own partner");
            if (j > 0 && list[j] <= list[j - 1]) {
                throw ParameterError("partner lists must be strictly ascending");
            }
        }
    }
}

bool EpistasisMap::depends_on(std::size_t locus, std::size_t other) const {
    const auto& list = partners_.at(locus);
    return std::binary_search(list.begin(), list.end(), other);
}

EpistasisMap build_epistasis_map(std::size_t n, std::size_t k, EpistasisPattern pattern,
                                 RandomStream& rng) {
    check_nk(n, k);
    std::vector<std::vector<std::size_t>> partners(n);
    std::vector<std::size_t> others;
    others.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& list = partners[i];
        list.reserve(k);
        if (pattern == EpistasisPattern::adjacent) {
            for (std::size_t j = 1; j <= k; ++j) list.push_back((i + j) % n);
        } else {
            others.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) others.push_back(j);
            }
            // partial Fisher-Yates: the first k slots become a uniform k-subset
            for (std::size_t j = 0; j < k; ++j) {
                const auto pick = j + static_cast<std::size_t>(rng.below(others.size() - j));
                std::swap(others[j], others[pick]);
                list.push_back(others[j]);
            }
        }
        std::sort(list.begin(), list.end());
    }
    return EpistasisMap(std::move(partners));
}

FitnessTable::FitnessTable(std::size_t n, std::size_t k, std::vector<double> entries)
    : n_(n), k_(k), rows_(rows_for(k)), entries_(std::move(entries)) {
    check_nk(n, k);
    if (entries_.size() != n_ * rows_) throw ParameterError("fitness table needs n * 2^(k+1) entries");
    for (double v : entries_) {
        if (!(v >= 0.0 && v < 1.0)) throw ParameterError("fitness table entries must lie in [0, 1)");
    }
}

FitnessTable generate_fitness_tables(std::size_t n, std::size_t k, RandomStream& rng) {
    check_nk(n, k);
    const std::size_t total = n * rows_for(k);
    std::vector<double> entries(total);
    for (auto& v : entries) v = rng.uniform01();
    return FitnessTable(n, k, std::move(entries));
}

std::size_t table_index(const Genotype& genotype, std::size_t locus, const EpistasisMap& epistasis) {
    std::size_t row = genotype[locus];
    for (std::size_t partner : epistasis.partners(locus)) row = (row << 1) | genotype[partner];
    return row;
}

WeightVector WeightVector::equal(std::size_t n) {
    if (n == 0) throw ParameterError("weight vector needs at least one entry");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector make_weight_vector(std::span<const double> betas) {
    if (betas.empty()) throw ParameterError("weight vector needs at least one beta");
    for (double b : betas) {
        if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("path weights must be positive and finite");
    }
    const double total = std::accumulate(betas.begin(), betas.end(), 0.0);
    std::vector<double> phi(betas.begin(), betas.end());
    for (auto& p : phi) p /= total;
    const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) throw ParameterError("normalized weights do not sum to one");
    return WeightVector(std::move(phi));
}

Landscape::Landscape(EpistasisMap epistasis, FitnessTable tables, WeightVector weights)
    : epistasis_(std::move(epistasis)), tables_(std::move(tables)), weights_(std::move(weights)) {
    if (tables_.n() != epistasis_.n() || tables_.k() != epistasis_.k()) {
        throw ParameterError("fitness tables do not match the epistasis map");
    }
    if (weights_.size() != epistasis_.n()) throw ParameterError("weight vector length must equal n");
}

Landscape Landscape::generate(std::size_t n, std::size_t k, EpistasisPattern pattern,
                              const WeightVector& weights, RandomStream& rng) {
    auto epistasis = build_epistasis_map(n, k, pattern, rng);
    auto tables = generate_fitness_tables(n, k, rng);
    return Landscape(std::move(epistasis), std::move(tables), weights);
}

double Landscape::contribution(const Genotype& genotype, std::size_t locus) const {
    if (genotype.size() != n()) throw ContractError("genotype length does not match landscape n");
    return tables_.at(locus, table_index(genotype, locus, epistasis_));
}

double Landscape::evaluate(const Genotype& genotype) const {
    if (genotype.size() != n()) {
        throw ContractError("genotype length " + std::to_string(genotype.size()) +
                            " does not match landscape n=" + std::to_string(n()));
    }
    double fitness = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
        fitness += weights_[i] * tables_.at(i, table_index(genotype, i, epistasis_));
    }
    return fitness;
}

std::vector<Genotype> neighbors(const Genotype& genotype) {
    std::vector<Genotype> out;
    out.reserve(genotype.size());
    for (std::size_t i = 0; i < genotype.size(); ++i) out.push_back(genotype.flipped(i));
    return out;
}

}  // namespace nkland
