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
#include <string_view>

#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/random.hpp"
#include "qent/states.hpp"

namespace qent {

enum class EnsembleKind { Full, BellDiagonal };

inline std::string_view ensemble_name(EnsembleKind kind) {
    return kind == EnsembleKind::Full ? "full" : "bell-diagonal";
}

inline EnsembleKind parse_ensemble(std::string_view text) {
    if (text == "full") {
        return EnsembleKind::Full;
    }
    if (text == "bell-diagonal") {
        return EnsembleKind::BellDiagonal;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown ensemble '" + std::string(text) + "'");
}

/// Haar-distributed 4x4 unitary.
///
/// Columns of a Ginibre matrix (i.i.d. standard complex normals) are
/// orthonormalized by Gram-Schmidt with one reorthogonalization pass. This is
/// the QR factorization whose triangular factor has a real positive diagonal,
/// which is exactly the phase convention that makes Q Haar distributed.
inline Matrix4 sample_haar_unitary(RandomStream &rng) {
    std::array<std::array<Complex, 4>, 4> cols;
    for (auto &col : cols) {
        for (auto &z : col) {
            const auto g = rng.normal_pair();
            z = Complex(g[0], g[1]) * (1.0 / std::sqrt(2.0));
        }
    }
    for (std::size_t j = 0; j < 4; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex overlap = 0.0;
                for (std::size_t r = 0; r < 4; ++r) {
                    overlap += std::conj(cols[i][r]) * cols[j][r];
                }
                for (std::size_t r = 0; r < 4; ++r) {
                    cols[j][r] -= overlap * cols[i][r];
                }
            }
        }
        double norm2 = 0.0;
        for (const auto &z : cols[j]) {
            norm2 += std::norm(z);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto &z : cols[j]) {
            z *= inv;
        }
    }
    Matrix4 u;
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t r = 0; r < 4; ++r) {
            u(r, c) = cols[c][r];
        }
    }
    return u;
}

/// Uniform point on the 3-simplex (flat Dirichlet) from normalized exponentials.
inline std::array<double, 4> sample_simplex(RandomStream &rng) {
    std::array<double, 4> w;
    double total = 0.0;
    for (auto &x : w) {
        x = rng.exponential();
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

/// Full: rho = U diag(w) U^dagger with U Haar and w uniform on the simplex.
/// BellDiagonal: Bell-diagonal state with simplex-uniform weights.
inline DensityMatrix sample_state(RandomStream &rng, EnsembleKind kind) {
    if (kind == EnsembleKind::BellDiagonal) {
        return bell_diagonal(sample_simplex(rng));
    }
    const Matrix4 u = sample_haar_unitary(rng);
    const auto w = sample_simplex(rng);
    return DensityMatrix::from_psd_construction(u * Matrix4::diagonal(w) * u.adjoint());
}

/// Haar unitary on one qubit, used for local-unitary checks.
inline Matrix2 sample_haar_unitary_2(RandomStream &rng) {
    std::array<Complex, 4> g;
    for (auto &z : g) {
        const auto p = rng.normal_pair();
        z = Complex(p[0], p[1]);
    }
    // Columns (g0, g1) and (g2, g3), Gram-Schmidt.
    const double n0 = std::sqrt(std::norm(g[0]) + std::norm(g[1]));
    const Complex a = g[0] / n0, b = g[1] / n0;
    Complex c = g[2], d = g[3];
    const Complex overlap = std::conj(a) * c + std::conj(b) * d;
    c -= overlap * a;
    d -= overlap * b;
    const double n1 = std::sqrt(std::norm(c) + std::norm(d));
    Matrix2 u;
    u(0, 0) = a;
    u(1, 0) = b;
    u(0, 1) = c / n1;
    u(1, 1) = d / n1;
    return u;
}

}  // namespace qent
