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

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "qent/error.hpp"

namespace qent {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Counter-based: output depends only on (counter, key).
///
/// Known answer: counter {0,0,0,0}, key {0,0} gives
/// {0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}.
class Philox4x32 {
   public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Block generate(Block counter, Key key) {
        counter = round(counter, key);
        for (int r = 1; r < 10; ++r) {
            key[0] += kWeylA;
            key[1] += kWeylB;
            counter = round(counter, key);
        }
        return counter;
    }

   private:
    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

    static constexpr Block round(const Block &c, const Key &k) {
        const std::uint64_t p0 = std::uint64_t{kMulA} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMulB} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// SplitMix64 finalizer (Stafford variant 13). A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Identity of a random stream: master seed plus stream index.
struct SeededStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeededStream &, const SeededStream &) = default;
};

/// Uniform random bit generator over one SeededStream.
///
/// The Philox key is the master seed. The counter's high 64 bits hold
/// mix64(stream_index) and its low 64 bits the block number, so distinct
/// stream indices address disjoint counter ranges and can never overlap.
/// Each 128-bit block yields two 64-bit outputs, low word first.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    explicit RandomStream(SeededStream id)
        : id_(id),
          key_{static_cast<std::uint32_t>(id.master_seed), static_cast<std::uint32_t>(id.master_seed >> 32)},
          stream_word_(mix64(id.stream_index)) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    const SeededStream &id() const noexcept {
        return id_;
    }

    result_type operator()() {
        if (buffered_ == 0) {
            refill();
        }
        const std::size_t at = 2 - buffered_;
        --buffered_;
        return block_[at];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a logarithm argument.
    double uniform_open_zero() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    /// Unit-rate exponential variate, -ln u.
    double exponential() {
        return -std::log(uniform_open_zero());
    }

    /// Pair of independent standard normals by Box-Muller.
    std::array<double, 2> normal_pair() {
        const double radius = std::sqrt(-2.0 * std::log(uniform_open_zero()));
        const double angle = 2.0 * 3.14159265358979323846 * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

   private:
    void refill() {
        const Philox4x32::Block counter{static_cast<std::uint32_t>(block_index_),
                                        static_cast<std::uint32_t>(block_index_ >> 32),
                                        static_cast<std::uint32_t>(stream_word_),
                                        static_cast<std::uint32_t>(stream_word_ >> 32)};
        const auto out = Philox4x32::generate(counter, key_);
        block_[0] = std::uint64_t{out[0]} | (std::uint64_t{out[1]} << 32);
        block_[1] = std::uint64_t{out[2]} | (std::uint64_t{out[3]} << 32);
        ++block_index_;
        buffered_ = 2;
    }

    SeededStream id_;
    Philox4x32::Key key_;
    std::uint64_t stream_word_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> block_{};
    std::size_t buffered_ = 0;
};

/// Streams {seed, 0}, ..., {seed, n_workers - 1}.
inline std::vector<SeededStream> split_streams(std::uint64_t master_seed, std::size_t n_workers) {
    if (n_workers == 0) {
        throw Error(ErrorCode::InvalidConfig, "at least one stream is required");
    }
    std::vector<SeededStream> out;
    out.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) {
        out.push_back({master_seed, i});
    }
    return out;
}

}  // namespace qent
