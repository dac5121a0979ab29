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


#include "qent/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "boost/math/distributions/normal.hpp"
#include "gtest/gtest.h"

using namespace qent;

namespace {

template <class Fn>
void expect_error(ErrorCode code, Fn &&fn) {
    try {
        fn();
        FAIL() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

Moments moments_of(std::initializer_list<double> xs) {
    Moments m;
    for (double x : xs) {
        m.add(x);
    }
    return m;
}

std::vector<std::optional<double>> optional_means(const std::vector<double> &v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST(moments, dispersion_examples) {
    EXPECT_EQ(moments_of({1.0, 1.0, 1.0}).dispersion(), 0.0);
    EXPECT_EQ(moments_of({0.0, 2.0}).dispersion(), 1.0);
    EXPECT_EQ(moments_of({0.0, 2.0}).mean(), 1.0);
    EXPECT_EQ(Moments().dispersion(), 0.0);
    EXPECT_EQ(Moments().mean(), 0.0);
}

TEST(moments, constant_data_has_exactly_zero_dispersion) {
    for (double c : {0.1, 1.0 / 3.0, -2.718281828, 12345.678}) {
        Moments m;
        for (int i = 0; i < 10000; ++i) {
            m.add(c);
        }
        EXPECT_EQ(m.dispersion(), 0.0) << c;
    }
}

TEST(moments, gaussian_dispersion_small_sigma) {
    std::mt19937_64 gen(40);
    std::normal_distribution<double> normal(0.0, 0.3);
    Moments m;
    for (int i = 0; i < 100000; ++i) {
        m.add(normal(gen));
    }
    EXPECT_NEAR(m.dispersion() / 0.3, 1.0, 0.01);
}

TEST(moments, gaussian_dispersion) {
    std::mt19937_64 gen(41);
    std::normal_distribution<double> normal(3.0, 2.0);
    Moments m;
    for (int i = 0; i < 200000; ++i) {
        m.add(normal(gen));
    }
    EXPECT_NEAR(m.dispersion(), 2.0, 0.02);
    EXPECT_NEAR(m.mean(), 3.0, 0.02);
}

TEST(moments, shift_and_scale) {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs(5000);
    for (double &x : xs) {
        x = u(gen);
    }
    Moments base, shifted, scaled;
    for (double x : xs) {
        base.add(x);
        shifted.add(x + 7.25);
        scaled.add(-3.0 * x);
    }
    EXPECT_NEAR(shifted.dispersion(), base.dispersion(), 1e-12);
    EXPECT_NEAR(scaled.dispersion(), 3.0 * base.dispersion(), 1e-12);
}

TEST(moments, rejects_bad_values) {
    Moments m;
    expect_error(ErrorCode::OutOfRange, [&] { m.add(std::nan("")); });
    expect_error(ErrorCode::OutOfRange, [&] { m.add(1e30); });
    EXPECT_EQ(m.count(), 0u);
}

TEST(accumulator, single_record) {
    BinnedAccumulator acc(50, 1);
    const std::vector<double> v{1.0};
    acc.accumulate(0.5, v);
    const Moments &m = acc.moments(acc.bin_index(0.5), 0);
    EXPECT_EQ(m.count(), 1u);
    EXPECT_EQ(m.sum(), 1.0);
    EXPECT_EQ(m.sum_sq(), 1.0);
    EXPECT_EQ(acc.bin_index(0.5), 25u);
}

TEST(accumulator, examples) {
    BinnedAccumulator acc(10, 2);
    const std::vector<double> v1{1.0, 2.0}, v2{3.0, 6.0};
    acc.accumulate(0.05, v1);
    acc.accumulate(0.07, v2);
    EXPECT_EQ(acc.moments(0, 0).count(), 2u);
    EXPECT_EQ(acc.moments(0, 0).mean(), 2.0);
    EXPECT_EQ(acc.moments(0, 1).mean(), 4.0);
    EXPECT_EQ(acc.moments(0, 0).dispersion(), 1.0);
    EXPECT_EQ(acc.moments(1, 0).count(), 0u);

    acc.accumulate(1.0, v1);
    EXPECT_EQ(acc.moments(9, 0).count(), 1u);
    acc.accumulate(0.1, v1);
    EXPECT_EQ(acc.moments(1, 0).count(), 1u);
    EXPECT_EQ(acc.bin_index(0.0), 0u);
    EXPECT_NEAR(acc.bin_center(0), 0.05, 1e-15);
    EXPECT_NEAR(acc.bin_width(), 0.1, 1e-15);

    expect_error(ErrorCode::OutOfRange, [&] { acc.accumulate(-0.01, v1); });
    expect_error(ErrorCode::OutOfRange, [&] { acc.accumulate(1.01, v1); });
    const std::vector<double> wrong{1.0};
    expect_error(ErrorCode::InvalidConfig, [&] { acc.accumulate(0.5, wrong); });
    expect_error(ErrorCode::InvalidConfig, [&] { acc.merge(BinnedAccumulator(5, 2)); });
}

TEST(accumulator, merge_is_exact_for_any_partition) {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> normal;
    std::vector<SampleRecord> records(3000);
    for (auto &r : records) {
        r.c_squared = u(gen);
        r.values = {normal(gen), std::exp(normal(gen)), u(gen)};
    }
    BinnedAccumulator whole(20, 3);
    for (const auto &r : records) {
        whole.accumulate(r);
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto shuffled = records;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        const std::size_t parts = 2 + trial;
        std::vector<BinnedAccumulator> pieces(parts, BinnedAccumulator(20, 3));
        for (std::size_t i = 0; i < shuffled.size(); ++i) {
            pieces[gen() % parts].accumulate(shuffled[i]);
        }
        std::shuffle(pieces.begin(), pieces.end(), gen);
        BinnedAccumulator merged(20, 3);
        for (const auto &p : pieces) {
            merged.merge(p);
        }
        EXPECT_TRUE(merged == whole);
    }
}

TEST(derivative, constant_linear_quadratic) {
    std::vector<double> centers(20);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        centers[i] = (i + 0.5) / 20.0;
    }
    std::vector<double> constant(20, 0.7), linear(20), quadratic(20);
    for (std::size_t i = 0; i < 20; ++i) {
        linear[i] = 1.0 - centers[i];
        quadratic[i] = centers[i] * centers[i];
    }
    for (const auto &d : derivative_profile(centers, optional_means(constant))) {
        EXPECT_NEAR(*d, 0.0, 1e-12);
    }
    for (const auto &d : derivative_profile(centers, optional_means(linear))) {
        EXPECT_NEAR(*d, -1.0, 1e-12);
    }
    const auto dq = derivative_profile(centers, optional_means(quadratic));
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_LT(std::abs(*dq[i] - 2.0 * centers[i]), 1e-3);
    }
}

TEST(derivative, squared_linear_profile_on_fifty_bins) {
    std::vector<double> centers(50), means(50);
    for (std::size_t i = 0; i < 50; ++i) {
        centers[i] = (i + 0.5) / 50.0;
        means[i] = (1.0 - centers[i]) * (1.0 - centers[i]);
    }
    const auto d = derivative_profile(centers, optional_means(means));
    for (std::size_t i = 0; i < 50; ++i) {
        EXPECT_LT(std::abs(*d[i] + 2.0 * (1.0 - centers[i])), 1e-3);
    }
}

TEST(derivative, handles_gaps_and_short_runs) {
    std::vector<double> centers{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    std::vector<std::optional<double>> means{1.0, std::nullopt, 2.0, 2.5, std::nullopt, 1.0, 2.0};
    expect_error(ErrorCode::InsufficientBins, [&] { derivative_profile(centers, means); });

    means = {1.0, std::nullopt, 2.0, 2.5, 3.0, std::nullopt, 4.0};
    const auto d = derivative_profile(centers, means);
    EXPECT_FALSE(d[0]);
    EXPECT_FALSE(d[1]);
    EXPECT_NEAR(*d[3], 5.0, 1e-12);
    EXPECT_FALSE(d[5]);
    EXPECT_FALSE(d[6]);
    EXPECT_TRUE(d[2] && d[4]);
}

TEST(ratio, examples) {
    EXPECT_NEAR(*correlation_ratio(0.2, -0.5), 0.4, 1e-15);
    EXPECT_EQ(*correlation_ratio(0.0, -0.5), 0.0);
    EXPECT_FALSE(correlation_ratio(0.2, 0.0));
    EXPECT_FALSE(correlation_ratio(0.2, 1e-13));
    EXPECT_FALSE(correlation_ratio(std::nullopt, 1.0));
}

TEST(profile, linear_records_at_centers) {
    BinnedAccumulator acc(25, 1);
    for (std::size_t b = 0; b < 25; ++b) {
        const double c = acc.bin_center(b);
        const std::vector<double> v{1.0 - c};
        for (int k = 0; k < 12; ++k) {
            acc.accumulate(c, v);
        }
    }
    for (const auto &row : build_profile(acc, 0)) {
        EXPECT_NEAR(*row.derivative, -1.0, 1e-12);
        EXPECT_EQ(*row.dispersion, 0.0);
        EXPECT_EQ(*row.ratio, 0.0);
        EXPECT_FALSE(row.low_confidence);
    }
}

TEST(profile, recovers_known_ratio_from_noisy_records) {
    // Mean profile 1 - C^2 (slope -1) plus noise of dispersion 0.3, 10^5
    // records, so r = 0.3. Noise values are Gaussian quantiles and positions are
    // spread evenly inside each bin, paired through a fixed permutation.
    constexpr std::size_t bins = 50, per_bin = 2000;
    constexpr double sigma = 0.3;
    const boost::math::normal_distribution<double> standard;
    std::vector<double> z(per_bin);
    for (std::size_t j = 0; j < per_bin; ++j) {
        z[j] = boost::math::quantile(standard, (j + 0.5) / per_bin);
    }
    BinnedAccumulator acc(bins, 1);
    for (std::size_t b = 0; b < bins; ++b) {
        for (std::size_t j = 0; j < per_bin; ++j) {
            const double c2 = (b + (j + 0.5) / per_bin) / bins;
            const std::vector<double> v{1.0 - c2 + sigma * z[(j * 7919) % per_bin]};
            acc.accumulate(c2, v);
        }
    }
    const auto rows = build_profile(acc, 0);
    for (std::size_t b = 1; b + 1 < bins; ++b) {
        ASSERT_TRUE(rows[b].ratio);
        EXPECT_NEAR(*rows[b].ratio / sigma, 1.0, 0.05) << b;
    }
}

TEST(profile, noisy_records_with_independent_noise) {
    // The same profile with i.i.d. noise: each bin's slope then carries about
    // 24% noise, so only the median ratio is checked.
    constexpr std::size_t bins = 50, per_bin = 2000;
    std::mt19937_64 gen(44);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BinnedAccumulator acc(bins, 1);
    for (std::size_t i = 0; i < bins * per_bin; ++i) {
        const double c2 = u(gen);
        const std::vector<double> v{1.0 - c2 + noise(gen)};
        acc.accumulate(c2, v);
    }
    std::vector<double> ratios;
    for (const auto &row : build_profile(acc, 0)) {
        ratios.push_back(*row.ratio);
    }
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    EXPECT_NEAR(ratios[ratios.size() / 2] / 0.3, 1.0, 0.15);
}

TEST(profile, empty_accumulator) {
    BinnedAccumulator acc(10, 1);
    expect_error(ErrorCode::InsufficientBins, [&] { build_profile(acc, 0); });
    const auto rows = build_profile(acc, 0, false);
    ASSERT_EQ(rows.size(), 10u);
    for (const auto &row : rows) {
        EXPECT_FALSE(row.mean);
        EXPECT_FALSE(row.ratio);
        EXPECT_TRUE(row.low_confidence);
    }
}
