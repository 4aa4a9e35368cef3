#pragma once

#include <cmath>
#include <cstdint>

namespace nkland {

/// Welford single-pass mean and variance. Results depend on push order,
/// so callers that need reproducible bits must push in a fixed order.
class RunningStats {
public:
    void push(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Population variance (divides by count).
    double variance() const noexcept { return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_); }
    double stddev() const noexcept { return std::sqrt(variance()); }
    double standard_error() const noexcept {
        return count_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace nkland
