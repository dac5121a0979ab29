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
#include <cmath>
#include <span>
#include <vector>

#include "qent/error.hpp"

// Closed forms for Bell-diagonal states. With largest weight w >= 1/2 the
// concurrence is C = 2w - 1, so w = (1 + C)/2 and R_inf = -ln w depends on C^2
// alone. States with w < 1/2 are separable and lie off this curve.

namespace qent {

inline double bell_concurrence_from_max_weight(double max_weight) {
    return std::max(0.0, 2.0 * max_weight - 1.0);
}

struct BellCurvePoint {
    double c_squared = 0.0;
    double r_infinity = 0.0;
};

/// -ln((1 + C)/2) for C^2 in (0, 1].
inline double bell_r_infinity(double c_squared) {
    if (!(c_squared > 0.0 && c_squared <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "squared concurrence must lie in (0, 1]");
    }
    return std::log(2.0 / (1.0 + std::sqrt(c_squared)));
}

inline std::vector<BellCurvePoint> bell_r_infinity_curve(std::span<const double> grid) {
    std::vector<BellCurvePoint> out;
    out.reserve(grid.size());
    for (double c2 : grid) {
        out.push_back({c2, bell_r_infinity(c2)});
    }
    return out;
}

/// k/n for k = 1..n.
inline std::vector<double> uniform_c2_grid(std::size_t points) {
    if (points == 0) {
        throw Error(ErrorCode::OutOfRange, "grid needs at least one point");
    }
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(points);
    }
    return grid;
}

}  // namespace qent
