#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nkland/rng.hpp"

namespace nkland {

/// A point of the design space: one bit per capability, locus 0 first.
class Genotype {
public:
    Genotype() = default;
    /// All-zero genotype of length n.
    explicit Genotype(std::size_t n) : bits_(n, 0) {}
    /// Throws ParameterError for any element other than 0 or 1.
    explicit Genotype(std::vector<std::uint8_t> bits);

    /// Parses "0101"; throws ParameterError on other characters or empty input.
    static Genotype parse(std::string_view text);
    /// Genotype whose integer value (locus 0 most significant) is `value`.
    static Genotype from_index(std::uint64_t value, std::size_t n);
    /// Each of the 2^n strings with equal probability.
    static Genotype random(std::size_t n, RandomStream& rng);

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t locus) const { return bits_[locus]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    void flip(std::size_t locus) { bits_.at(locus) ^= 1U; }
    Genotype flipped(std::size_t locus) const {
        Genotype copy = *this;
        copy.flip(locus);
        return copy;
    }

    std::uint64_t to_index() const;
    std::string to_string() const;

    friend bool operator==(const Genotype&, const Genotype&) = default;
    friend auto operator<=>(const Genotype&, const Genotype&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const Genotype& a, const Genotype& b);

enum class EpistasisPattern { random, adjacent };

std::string_view to_string(EpistasisPattern pattern) noexcept;
EpistasisPattern parse_pattern(std::string_view text);

/// For each locus, the K other loci that co-determine its contribution,
/// sorted ascending.
class EpistasisMap {
public:
    /// Validates every invariant; throws ParameterError when one fails.
    explicit EpistasisMap(std::vector<std::vector<std::size_t>> partners);

    std::size_t n() const noexcept { return partners_.size(); }
    std::size_t k() const noexcept { return k_; }
    std::span<const std::size_t> partners(std::size_t locus) const { return partners_.at(locus); }
    /// True iff `locus` depends on `other` (other is in its partner list).
    bool depends_on(std::size_t locus, std::size_t other) const;

    friend bool operator==(const EpistasisMap&, const EpistasisMap&) = default;

private:
    std::vector<std::vector<std::size_t>> partners_;
    std::size_t k_ = 0;
};

EpistasisMap build_epistasis_map(std::size_t n, std::size_t k, EpistasisPattern pattern,
                                 RandomStream& rng);

/// N lookup tables of 2^(K+1) contributions each, stored locus-major.
class FitnessTable {
public:
    /// Throws ParameterError unless entries.size() == n * 2^(k+1) and all lie in [0, 1).
    FitnessTable(std::size_t n, std::size_t k, std::vector<double> entries);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t total_entries() const noexcept { return entries_.size(); }

    double at(std::size_t locus, std::size_t row) const { return entries_[locus * rows_ + row]; }
    std::span<const double> table(std::size_t locus) const {
        return std::span<const double>(entries_).subspan(locus * rows_, rows_);
    }
    std::span<const double> entries() const noexcept { return entries_; }

    friend bool operator==(const FitnessTable&, const FitnessTable&) = default;

private:
    std::size_t n_;
    std::size_t k_;
    std::size_t rows_;
    std::vector<double> entries_;
};

/// Draws n * 2^(k+1) uniform [0,1) entries, locus-major then row order.
FitnessTable generate_fitness_tables(std::size_t n, std::size_t k, RandomStream& rng);

/// Row of `locus`'s table selected by `genotype`: the locus's own bit is the
/// most significant, followed by its partners' bits in ascending locus order.
std::size_t table_index(const Genotype& genotype, std::size_t locus, const EpistasisMap& epistasis);

/// Normalized per-locus weights phi, positive and summing to one.
class WeightVector {
public:
    std::size_t size() const noexcept { return phi_.size(); }
    double operator[](std::size_t i) const { return phi_[i]; }
    std::span<const double> values() const noexcept { return phi_; }

    /// phi_i = 1/n, Kauffman's unweighted mean.
    static WeightVector equal(std::size_t n);

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend WeightVector make_weight_vector(std::span<const double> betas);

private:
    explicit WeightVector(std::vector<double> phi) : phi_(std::move(phi)) {}
    std::vector<double> phi_;
};

/// phi_i = beta_i / sum(beta). Throws ParameterError for empty or non-positive betas.
WeightVector make_weight_vector(std::span<const double> betas);

/// Structural path coefficients of the five IT-enabled dynamic capabilities
/// (sensing, learning, coordinating, integrating, reconfiguring).
inline constexpr std::array<double, 5> kItdcBetas{0.226, 0.249, 0.212, 0.212, 0.245};

/// An immutable NK landscape with weighted fitness.
class Landscape {
public:
    /// Assembles a landscape from parts; throws ParameterError when their
    /// dimensions disagree.
    Landscape(EpistasisMap epistasis, FitnessTable tables, WeightVector weights);

    /// Epistasis map then fitness tables, both drawn from `rng`.
    static Landscape generate(std::size_t n, std::size_t k, EpistasisPattern pattern,
                              const WeightVector& weights, RandomStream& rng);

    std::size_t n() const noexcept { return epistasis_.n(); }
    std::size_t k() const noexcept { return epistasis_.k(); }
    const EpistasisMap& epistasis() const noexcept { return epistasis_; }
    const FitnessTable& tables() const noexcept { return tables_; }
    const WeightVector& weights() const noexcept { return weights_; }

    /// Unweighted contribution f_i of one locus.
    double contribution(const Genotype& genotype, std::size_t locus) const;

    /// F(x) = sum_i phi_i f_i(x). Throws ContractError on a length mismatch.
    double evaluate(const Genotype& genotype) const;

    friend bool operator==(const Landscape&, const Landscape&) = default;

private:
    EpistasisMap epistasis_;
    FitnessTable tables_;
    WeightVector weights_;
};

/// The n 1-mutant neighbors, in ascending flipped-locus order.
std::vector<Genotype> neighbors(const Genotype& genotype);

}  // namespace nkland
