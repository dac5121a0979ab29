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
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/states.hpp"

// All q-entropies here use the natural logarithm. (Entanglement of formation
// in entanglement.hpp is in bits.)

namespace qent {

/// The entropic index q: a finite positive value, the Shannon limit q -> 1, or
/// the q -> infinity limit.
class EntropicOrder {
   public:
    enum class Kind { Finite, Shannon, MaxLimit };

    /// Values within 1e-9 of 1 are rejected; use shannon() for those.
    static EntropicOrder finite(double q) {
        if (!std::isfinite(q) || q <= 0.0) {
            throw Error(ErrorCode::OutOfRange, "entropic order must be finite and positive");
        }
        if (std::abs(q - 1.0) <= kShannonBand) {
            throw Error(ErrorCode::OutOfRange, "entropic order too close to 1; use the Shannon order");
        }
        return EntropicOrder(Kind::Finite, q);
    }
    static EntropicOrder shannon() {
        return EntropicOrder(Kind::Shannon, 1.0);
    }
    static EntropicOrder max_limit() {
        return EntropicOrder(Kind::MaxLimit, std::numeric_limits<double>::infinity());
    }

    /// "inf" (or "infinity") is the max limit; a number within 1e-9 of 1 is
    /// Shannon; any other positive decimal is finite.
    static EntropicOrder parse(std::string_view text) {
        if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") {
            return max_limit();
        }
        double q = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
            throw Error(ErrorCode::InvalidConfig, "cannot parse entropic order '" + std::string(text) + "'");
        }
        if (std::isfinite(q) && std::abs(q - 1.0) <= kShannonBand) {
            return shannon();
        }
        if (!std::isfinite(q) || q <= 0.0) {
            throw Error(ErrorCode::InvalidConfig, "entropic order must be positive: '" + std::string(text) + "'");
        }
        return finite(q);
    }

    Kind kind() const noexcept {
        return kind_;
    }
    /// q itself: 1 for Shannon, +infinity for the max limit.
    double value() const noexcept {
        return q_;
    }

    /// Short text form: "0.5", "1", "inf".
    std::string label() const {
        if (kind_ == Kind::MaxLimit) {
            return "inf";
        }
        if (kind_ == Kind::Shannon) {
            return "1";
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.15g", q_);
        return buf;
    }

    friend bool operator==(const EntropicOrder &, const EntropicOrder &) = default;

    static constexpr double kShannonBand = 1e-9;

   private:
    EntropicOrder(Kind kind, double q) : kind_(kind), q_(q) {
    }

    Kind kind_;
    double q_;
};

enum class EntropyFamily { Tsallis, Renyi, TsallisNormalized };

inline std::string_view family_name(EntropyFamily family) {
    switch (family) {
        case EntropyFamily::Tsallis:
            return "tsallis";
        case EntropyFamily::Renyi:
            return "renyi";
        case EntropyFamily::TsallisNormalized:
            return "tsallis-normalized";
    }
    return "?";
}

inline EntropyFamily parse_family(std::string_view text) {
    if (text == "renyi") {
        return EntropyFamily::Renyi;
    }
    if (text == "tsallis") {
        return EntropyFamily::Tsallis;
    }
    if (text == "tsallis-normalized") {
        return EntropyFamily::TsallisNormalized;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown entropy family '" + std::string(text) + "'");
}

/// Clamp eigenvalues to [0, 1] and renormalize when the sum drifts from 1 by
/// more than 1e-14. Eigenvalues below -1e-10 mean the input was not a state.
template <std::size_t N>
std::array<double, N> clamp_spectrum(std::array<double, N> values) {
    double total = 0.0;
    for (double &x : values) {
        if (x < -kStateTolerance) {
            throw Error(ErrorCode::InvalidState, "state has an eigenvalue below -1e-10");
        }
        x = std::clamp(x, 0.0, 1.0);
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-14) {
        for (double &x : values) {
            x /= total;
        }
    }
    return values;
}

inline std::array<double, 4> spectrum_of(const EigenSystem<4> &eig) {
    return clamp_spectrum(eig.values);
}

inline std::array<double, 4> spectrum_of(const DensityMatrix &rho) {
    return spectrum_of(hermitian_eigensystem(rho.matrix()));
}

inline std::array<double, 2> spectrum_of(const ReducedDensityMatrix &rho) {
    return clamp_spectrum(hermitian_eigensystem(rho.matrix()).values);
}

namespace detail {

/// lambda^q as exp(q ln lambda); zero stays zero, underflow flushes to zero.
inline double power(double lambda, double q) {
    return lambda > 0.0 ? std::exp(q * std::log(lambda)) : 0.0;
}

inline double shannon(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            h -= x * std::log(x);
        }
    }
    return h;
}

inline double largest(std::span<const double> p) {
    return *std::max_element(p.begin(), p.end());
}

/// ln sum_i p_i^q, evaluated relative to the largest term so that large q does
/// not underflow.
inline double log_power_sum(std::span<const double> p, double q) {
    const double top = largest(p);
    const double log_top = std::log(top);
    double rest = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            rest += std::exp(q * (std::log(x) - log_top));
        }
    }
    return q * log_top + std::log(rest);
}

}  // namespace detail

/// omega_q = Tr rho^q = sum_i lambda_i^q.
inline double power_sum(std::span<const double> p, double q) {
    double s = 0.0;
    for (double x : p) {
        s += detail::power(x, q);
    }
    return s;
}

/// S_q = (1 - omega_q) / (q - 1); von Neumann entropy at q = 1; 0 at q = inf.
inline double tsallis(std::span<const double> p, const EntropicOrder &q) {
    switch (q.kind()) {
        case EntropicOrder::Kind::Shannon:
            return detail::shannon(p);
        case EntropicOrder::Kind::MaxLimit:
            return 0.0;
        case EntropicOrder::Kind::Finite:
            break;
    }
    // 1 - omega plus its rounding error (TwoSum), so S_q keeps full relative
    // accuracy when omega is small.
    const double omega = power_sum(p, q.value());
    const double head = 1.0 - omega;
    const double b = head - 1.0;
    const double tail = (1.0 - (head - b)) + (-omega - b);
    const double scale = q.value() - 1.0;
    return head / scale + tail / scale;
}

/// R_q = ln(omega_q) / (1 - q); von Neumann at q = 1; -ln lambda_max at q = inf.
inline double renyi(std::span<const double> p, const EntropicOrder &q) {
    switch (q.kind()) {
        case EntropicOrder::Kind::Shannon:
            return detail::shannon(p);
        case EntropicOrder::Kind::MaxLimit:
            return -std::log(detail::largest(p));
        case EntropicOrder::Kind::Finite:
            break;
    }
    return detail::log_power_sum(p, q.value()) / (1.0 - q.value());
}

/// R_q = ln[1 + (1 - q) S_q] / (1 - q): the Renyi entropy obtained from the
/// Tsallis entropy. Finite orders only.
///
/// S_q is re-evaluated in extended precision here: 1 + (1 - q) S_q equals
/// omega_q, which for large q is small enough that half an ulp of a double S_q
/// already shows in the logarithm.
inline double renyi_from_tsallis(std::span<const double> p, const EntropicOrder &q) {
    if (q.kind() != EntropicOrder::Kind::Finite) {
        return renyi(p, q);
    }
    const long double order = q.value();
    long double omega = 0.0L;
    for (double x : p) {
        if (x > 0.0) {
            omega += std::exp(order * std::log(static_cast<long double>(x)));
        }
    }
    const long double s = (1.0L - omega) / (order - 1.0L);
    return static_cast<double>(std::log1p((1.0L - order) * s) / (1.0L - order));
}

/// Largest Tsallis entropy on n outcomes: (1 - n^(1-q)) / (q - 1).
inline double tsallis_max(std::size_t n, const EntropicOrder &q) {
    const double dim = static_cast<double>(n);
    switch (q.kind()) {
        case EntropicOrder::Kind::Shannon:
            return std::log(dim);
        case EntropicOrder::Kind::MaxLimit:
            return 0.0;
        case EntropicOrder::Kind::Finite:
            break;
    }
    return (1.0 - std::pow(dim, 1.0 - q.value())) / (q.value() - 1.0);
}

/// Largest Renyi entropy on n outcomes, +ln n for every q.
inline double renyi_max(std::size_t n) {
    return std::log(static_cast<double>(n));
}

/// S_q / S_q^max. In the q -> inf limit this tends to 1 - lambda_max^q, i.e. 1
/// for every mixed state and 0 for pure ones.
inline double tsallis_normalized(std::span<const double> p, const EntropicOrder &q) {
    if (q.kind() == EntropicOrder::Kind::MaxLimit) {
        return detail::largest(p) < 1.0 - 1e-12 ? 1.0 : 0.0;
    }
    return tsallis(p, q) / tsallis_max(p.size(), q);
}

inline double entropy(std::span<const double> p, EntropyFamily family, const EntropicOrder &q) {
    switch (family) {
        case EntropyFamily::Tsallis:
            return tsallis(p, q);
        case EntropyFamily::Renyi:
            return renyi(p, q);
        case EntropyFamily::TsallisNormalized:
            return tsallis_normalized(p, q);
    }
    return 0.0;
}

inline double tsallis(const DensityMatrix &rho, const EntropicOrder &q) {
    return tsallis(spectrum_of(rho), q);
}
inline double renyi(const DensityMatrix &rho, const EntropicOrder &q) {
    return renyi(spectrum_of(rho), q);
}
inline double tsallis_normalized(const DensityMatrix &rho, const EntropicOrder &q) {
    return tsallis_normalized(spectrum_of(rho), q);
}

/// S[AB] - S[X] where X is the subsystem conditioned on. Negative values can
/// only occur for entangled states.
inline double conditional_q_entropy(const DensityMatrix &rho, const EntropicOrder &q, Subsystem conditioned_on,
                                    EntropyFamily family) {
    if (family == EntropyFamily::TsallisNormalized) {
        throw Error(ErrorCode::UnsupportedFamily, "conditional entropy is defined for Tsallis and Renyi only");
    }
    const auto whole = spectrum_of(rho);
    const auto marginal = spectrum_of(partial_trace(rho, conditioned_on));
    return entropy(whole, family, q) - entropy(marginal, family, q);
}

}  // namespace qent
