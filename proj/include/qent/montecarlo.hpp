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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iterator>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qent/entanglement.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/random.hpp"
#include "qent/sampler.hpp"
#include "qent/stats.hpp"

namespace qent {

/// One tracked (family, q) column.
struct Channel {
    EntropyFamily family = EntropyFamily::Renyi;
    EntropicOrder order = EntropicOrder::shannon();

    /// Column name, e.g. "renyi_q0.5" or "tsallis_normalized_qinf".
    std::string label() const {
        std::string name(family_name(family));
        std::replace(name.begin(), name.end(), '-', '_');
        return name + "_q" + order.label();
    }
};

inline std::size_t default_workers() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

struct RunConfig {
    std::uint64_t samples = 200000;
    std::uint64_t seed = 0;
    std::size_t bins = 50;
    std::size_t workers = default_workers();
    std::vector<EntropicOrder> q_list;
    EntropyFamily family = EntropyFamily::Renyi;
    EnsembleKind ensemble = EnsembleKind::Full;

    void validate() const {
        if (samples == 0 || bins == 0 || workers == 0) {
            throw Error(ErrorCode::InvalidConfig, "samples, bins and workers must be positive");
        }
        if (samples < bins) {
            throw Error(ErrorCode::InvalidConfig, "samples must be at least the number of bins");
        }
        if (q_list.empty()) {
            throw Error(ErrorCode::InvalidConfig, "at least one q is required");
        }
    }

    std::vector<Channel> channels() const {
        std::vector<Channel> out;
        for (const auto &q : q_list) {
            out.push_back({family, q});
        }
        return out;
    }
};

/// Concurrence, entanglement of formation and every channel's entropy for one
/// state, sharing a single eigen-decomposition of rho.
inline SampleRecord evaluate_state(const DensityMatrix &rho, std::span<const Channel> channels) {
    const auto eig = hermitian_eigensystem(rho.matrix());
    const auto spectrum = spectrum_of(eig);
    const double c = concurrence(rho, eig).concurrence;

    SampleRecord record;
    record.c_squared = c * c;
    record.eof_bits = eof_from_concurrence(c);
    record.values.reserve(channels.size());
    for (const auto &ch : channels) {
        record.values.push_back(entropy(spectrum, ch.family, ch.order));
    }
    return record;
}

/// Samples are generated in fixed chunks; chunk k always draws from stream
/// {seed, k}. Results therefore do not depend on the worker count.
inline constexpr std::uint64_t kChunkSize = 4096;

/// Runs `work(stream, count)` for every chunk on up to `workers` threads and
/// returns the results in chunk order.
template <class Work>
auto run_chunks(std::uint64_t samples, std::uint64_t seed, std::size_t workers, Work &&work)
    -> std::vector<decltype(work(std::declval<RandomStream &>(), std::uint64_t{}))> {
    using Result = decltype(work(std::declval<RandomStream &>(), std::uint64_t{}));
    const std::uint64_t n_chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::optional<Result>> slots(n_chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::uint64_t k = next++; k < n_chunks; k = next++) {
            try {
                RandomStream rng({seed, k});
                const std::uint64_t count = std::min(kChunkSize, samples - k * kChunkSize);
                slots[k].emplace(work(rng, count));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n_chunks;
            }
        }
    };

    const std::size_t threads = static_cast<std::size_t>(std::min<std::uint64_t>(workers, n_chunks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<Result> results;
    results.reserve(n_chunks);
    for (auto &slot : slots) {
        results.push_back(std::move(*slot));
    }
    return results;
}

/// Every sampled record, in sample order.
inline std::vector<SampleRecord> sample_records(const RunConfig &config) {
    config.validate();
    const auto channels = config.channels();
    auto chunks = run_chunks(config.samples, config.seed, config.workers, [&](RandomStream &rng, std::uint64_t n) {
        std::vector<SampleRecord> out;
        out.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            out.push_back(evaluate_state(sample_state(rng, config.ensemble), channels));
        }
        return out;
    });
    std::vector<SampleRecord> all;
    all.reserve(config.samples);
    for (auto &chunk : chunks) {
        std::move(chunk.begin(), chunk.end(), std::back_inserter(all));
    }
    return all;
}

/// Binned moments for all channels, merged in chunk order.
inline BinnedAccumulator accumulate_run(const RunConfig &config) {
    config.validate();
    const auto channels = config.channels();
    auto partials = run_chunks(config.samples, config.seed, config.workers, [&](RandomStream &rng, std::uint64_t n) {
        BinnedAccumulator acc(config.bins, channels.size());
        for (std::uint64_t i = 0; i < n; ++i) {
            acc.accumulate(evaluate_state(sample_state(rng, config.ensemble), channels));
        }
        return acc;
    });
    BinnedAccumulator total(config.bins, channels.size());
    for (const auto &p : partials) {
        total.merge(p);
    }
    return total;
}

struct ChannelProfile {
    Channel channel;
    std::vector<ProfileRow> rows;
};

inline std::vector<ChannelProfile> profiles_from(const BinnedAccumulator &acc, std::span<const Channel> channels,
                                                 bool require_derivative) {
    std::vector<ChannelProfile> out;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        out.push_back({channels[k], build_profile(acc, k, require_derivative)});
    }
    return out;
}

inline std::vector<ChannelProfile> run_profiles(const RunConfig &config, bool require_derivative = true) {
    const auto channels = config.channels();
    return profiles_from(accumulate_run(config), channels, require_derivative);
}

}  // namespace qent
