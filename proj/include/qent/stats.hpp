// Copyright 2026 The qent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qent/error.hpp"

namespace qent {

/// One sampled state: squared concurrence, entanglement of formation (bits),
/// and one value per tracked (family, q) channel.
struct SampleRecord {
    double c_squared = 0.0;
    double eof_bits = 0.0;
    std::vector<double> values;
};

/// Count, sum and sum of squares of a stream of doubles, exact under merge.
///
/// Values are rounded to a fixed-point grid of 2^-64 and summed as integers,
/// so accumulation and merge are exactly associative and commutative and any
/// partition of the same records gives identical state. The variance
/// n*sum_sq - sum^2 is likewise formed exactly before the final conversion.
class Moments {
   public:
    using Wide = boost::multiprecision::int256_t;

    static constexpr int kFractionBits = 64;
    /// |x| must stay below 2^24.
    static constexpr double kMaxMagnitude = 16777216.0;

    void add(double x) {
        if (!std::isfinite(x) || std::abs(x) >= kMaxMagnitude) {
            throw Error(ErrorCode::OutOfRange, "accumulated value is not finite or too large");
        }
        const Wide fixed(std::nearbyint(std::ldexp(x, kFractionBits)));
        ++count_;
        sum_ += fixed;
        sum_sq_ += fixed * fixed;
    }

    void merge(const Moments &other) {
        count_ += other.count_;
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
    }

    std::uint64_t count() const noexcept {
        return count_;
    }
    double sum() const {
        return std::ldexp(sum_.convert_to<double>(), -kFractionBits);
    }
    double sum_sq() const {
        return std::ldexp(sum_sq_.convert_to<double>(), -2 * kFractionBits);
    }

    /// Population mean; 0 when empty.
    double mean() const {
        return count_ == 0 ? 0.0 : sum() / static_cast<double>(count_);
    }

    /// Population dispersion sqrt(<x^2> - <x>^2); 0 when empty.
    double dispersion() const {
        if (count_ == 0) {
            return 0.0;
        }
        using Wider = boost::multiprecision::int512_t;
        const Wider n(count_);
        const Wider spread = n * Wider(sum_sq_) - Wider(sum_) * Wider(sum_);
        const double root = std::sqrt(spread.convert_to<double>());
        return std::ldexp(root, -kFractionBits) / static_cast<double>(count_);
    }

    friend bool operator==(const Moments &, const Moments &) = default;

   private:
    std::uint64_t count_ = 0;
    Wide sum_ = 0;
    Wide sum_sq_ = 0;
};

/// Per-bin moments over a uniform partition of C^2 in [0, 1], one set per
/// channel. Bins are right-open except the last, which is closed.
class BinnedAccumulator {
   public:
    BinnedAccumulator(std::size_t n_bins, std::size_t n_channels)
        : n_bins_(n_bins), n_channels_(n_channels), cells_(n_bins * n_channels) {
        if (n_bins == 0 || n_channels == 0) {
            throw Error(ErrorCode::InvalidConfig, "accumulator needs at least one bin and one channel");
        }
    }

    std::size_t n_bins() const noexcept {
        return n_bins_;
    }
    std::size_t n_channels() const noexcept {
        return n_channels_;
    }
    double bin_width() const noexcept {
        return 1.0 / static_cast<double>(n_bins_);
    }
    double bin_center(std::size_t bin) const noexcept {
        return (static_cast<double>(bin) + 0.5) / static_cast<double>(n_bins_);
    }

    std::size_t bin_index(double c_squared) const {
        if (!(c_squared >= 0.0 && c_squared <= 1.0 + 1e-12)) {
            throw Error(ErrorCode::OutOfRange, "squared concurrence outside [0, 1]");
        }
        const auto k = static_cast<std::size_t>(c_squared * static_cast<double>(n_bins_));
        return std::min(k, n_bins_ - 1);
    }

    void accumulate(double c_squared, std::span<const double> values) {
        if (values.size() != n_channels_) {
            throw Error(ErrorCode::InvalidConfig, "record has the wrong number of channels");
        }
        const std::size_t bin = bin_index(c_squared);
        for (std::size_t ch = 0; ch < n_channels_; ++ch) {
            cells_[bin * n_channels_ + ch].add(values[ch]);
        }
    }

    void accumulate(const SampleRecord &record) {
        accumulate(record.c_squared, record.values);
    }

    void merge(const BinnedAccumulator &other) {
        if (other.n_bins_ != n_bins_ || other.n_channels_ != n_channels_) {
            throw Error(ErrorCode::InvalidConfig, "cannot merge accumulators of different shape");
        }
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            cells_[k].merge(other.cells_[k]);
        }
    }

    const Moments &moments(std::size_t bin, std::size_t channel) const {
        return cells_.at(bin * n_channels_ + channel);
    }

    friend bool operator==(const BinnedAccumulator &, const BinnedAccumulator &) = default;

   private:
    std::size_t n_bins_;
    std::size_t n_channels_;
    std::vector<Moments> cells_;
};

struct BinStat {
    std::uint64_t count = 0;
    /// Absent for empty bins.
    std::optional<double> mean;
    std::optional<double> dispersion;
};

inline std::vector<BinStat> bin_mean_and_dispersion(const BinnedAccumulator &acc, std::size_t channel) {
    std::vector<BinStat> out(acc.n_bins());
    for (std::size_t b = 0; b < acc.n_bins(); ++b) {
        const Moments &m = acc.moments(b, channel);
        out[b].count = m.count();
        if (m.count() > 0) {
            out[b].mean = m.mean();
            out[b].dispersion = m.dispersion();
        }
    }
    return out;
}

/// d(mean)/d(C^2) on bin centers.
///
/// Runs of consecutive populated bins are differentiated independently:
/// central differences inside a run, second-order one-sided differences at its
/// ends. A run of two bins gets the plain two-point slope; an isolated bin gets
/// none. Throws InsufficientBins unless some run has at least three bins.
inline std::vector<std::optional<double>> derivative_profile(std::span<const double> centers,
                                                             std::span<const std::optional<double>> means) {
    if (centers.size() != means.size()) {
        throw Error(ErrorCode::InvalidConfig, "centers and means differ in length");
    }
    const std::size_t n = means.size();
    std::vector<std::optional<double>> out(n);
    bool any_long_run = false;

    std::size_t start = 0;
    while (start < n) {
        if (!means[start]) {
            ++start;
            continue;
        }
        std::size_t end = start;
        while (end < n && means[end]) {
            ++end;
        }
        const std::size_t len = end - start;
        auto m = [&](std::size_t i) { return *means[i]; };
        if (len == 2) {
            const double slope = (m(start + 1) - m(start)) / (centers[start + 1] - centers[start]);
            out[start] = slope;
            out[start + 1] = slope;
        } else if (len >= 3) {
            any_long_run = true;
            for (std::size_t i = start + 1; i + 1 < end; ++i) {
                out[i] = (m(i + 1) - m(i - 1)) / (centers[i + 1] - centers[i - 1]);
            }
            const double h_lo = centers[start + 1] - centers[start];
            out[start] = (-3.0 * m(start) + 4.0 * m(start + 1) - m(start + 2)) / (2.0 * h_lo);
            const double h_hi = centers[end - 1] - centers[end - 2];
            out[end - 1] = (3.0 * m(end - 1) - 4.0 * m(end - 2) + m(end - 3)) / (2.0 * h_hi);
        }
        start = end;
    }
    if (!any_long_run) {
        throw Error(ErrorCode::InsufficientBins, "need at least three consecutive populated bins");
    }
    return out;
}

inline constexpr double kDerivativeFloor = 1e-12;

/// |dispersion / derivative|; absent where |derivative| < 1e-12 or either
/// input is missing.
inline std::optional<double> correlation_ratio(std::optional<double> dispersion, std::optional<double> derivative) {
    if (!dispersion || !derivative || std::abs(*derivative) < kDerivativeFloor) {
        return std::nullopt;
    }
    return std::abs(*dispersion / *derivative);
}

inline constexpr std::uint64_t kLowConfidenceCount = 10;

struct ProfileRow {
    double bin_center = 0.0;
    std::uint64_t count = 0;
    std::optional<double> mean;
    std::optional<double> dispersion;
    std::optional<double> derivative;
    std::optional<double> ratio;
    bool low_confidence = true;
};

/// Mean, dispersion, derivative and ratio per bin for one channel. When
/// `require_derivative` is false a profile with too few populated bins is
/// returned without derivatives instead of throwing.
inline std::vector<ProfileRow> build_profile(const BinnedAccumulator &acc, std::size_t channel,
                                             bool require_derivative = true) {
    const auto stats = bin_mean_and_dispersion(acc, channel);
    std::vector<double> centers(acc.n_bins());
    std::vector<std::optional<double>> means(acc.n_bins());
    for (std::size_t b = 0; b < acc.n_bins(); ++b) {
        centers[b] = acc.bin_center(b);
        means[b] = stats[b].mean;
    }
    std::vector<std::optional<double>> slopes(acc.n_bins());
    try {
        slopes = derivative_profile(centers, means);
    } catch (const Error &e) {
        if (require_derivative || e.code() != ErrorCode::InsufficientBins) {
            throw;
        }
    }
    std::vector<ProfileRow> rows(acc.n_bins());
    for (std::size_t b = 0; b < acc.n_bins(); ++b) {
        ProfileRow &row = rows[b];
        row.bin_center = centers[b];
        row.count = stats[b].count;
        row.mean = stats[b].mean;
        row.dispersion = stats[b].dispersion;
        row.derivative = slopes[b];
        row.ratio = correlation_ratio(row.dispersion, row.derivative);
        row.low_confidence = row.count < kLowConfidenceCount;
    }
    return rows;
}

}  // namespace qent
