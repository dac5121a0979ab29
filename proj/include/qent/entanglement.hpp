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
#include <cmath>

#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

/// Wootters decomposition: roots are the square roots of the eigenvalues of
/// rho * rho_tilde, descending.
struct ConcurrenceDecomposition {
    std::array<double, 4> roots{};
    double concurrence = 0.0;
};

inline constexpr double kSurrogateNegativeTolerance = 1e-8;
/// States whose three smallest eigenvalues sum below this are treated as pure.
inline constexpr double kPureStateTail = 1e-13;

/// Spin flip rho_tilde = (sy x sy) rho^* (sy x sy).
inline Matrix4 spin_flip(const Matrix4 &rho) {
    static const Matrix4 yy = kron(pauli_y(), pauli_y());
    return yy * rho.conjugate() * yy;
}

/// sqrt(rho) from an eigensystem of rho, eigenvalues clamped at zero.
inline Matrix4 hermitian_sqrt(const EigenSystem<4> &eig) {
    std::array<double, 4> roots;
    for (std::size_t k = 0; k < 4; ++k) {
        roots[k] = std::sqrt(std::max(0.0, eig.values[k]));
    }
    return eig.vectors * Matrix4::diagonal(roots) * eig.vectors.adjoint();
}

/// Concurrence using an already computed eigensystem of rho.
///
/// rho * rho_tilde is not Hermitian, but it is similar to
/// sqrt(rho) rho_tilde sqrt(rho), which is Hermitian PSD, so the Hermitian
/// Jacobi kernel gives its spectrum.
inline ConcurrenceDecomposition concurrence(const DensityMatrix &rho, const EigenSystem<4> &rho_eig) {
    // Rank one up to round-off: the surrogate's zero eigenvalues would come back
    // as noise of order 1e-16 and their square roots would cost half the digits,
    // so use the pure-state form C = |psi^T (sy x sy) psi| instead.
    if (rho_eig.values[1] + rho_eig.values[2] + rho_eig.values[3] < kPureStateTail) {
        static const Matrix4 yy = kron(pauli_y(), pauli_y());
        Complex overlap = 0.0;
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                overlap += rho_eig.vectors(r, 0) * yy(r, c) * rho_eig.vectors(c, 0);
            }
        }
        ConcurrenceDecomposition out;
        out.roots[0] = std::abs(overlap);
        out.concurrence = std::clamp(out.roots[0], 0.0, 1.0);
        return out;
    }
    const Matrix4 root = hermitian_sqrt(rho_eig);
    const Matrix4 surrogate = (root * spin_flip(rho.matrix()) * root).hermitian_part();
    const auto eig = hermitian_eigensystem(surrogate);

    ConcurrenceDecomposition out;
    for (std::size_t k = 0; k < 4; ++k) {
        const double v = eig.values[k];
        if (v < -kSurrogateNegativeTolerance) {
            throw Error(ErrorCode::NegativeEigenvalueBeyondTolerance,
                        "spin-flip surrogate has a negative eigenvalue");
        }
        out.roots[k] = std::sqrt(std::max(0.0, v));
    }
    const double c = out.roots[0] - out.roots[1] - out.roots[2] - out.roots[3];
    out.concurrence = std::clamp(c, 0.0, 1.0);
    return out;
}

inline ConcurrenceDecomposition concurrence(const DensityMatrix &rho) {
    return concurrence(rho, hermitian_eigensystem(rho.matrix()));
}

/// h(x) = -x log2 x - (1-x) log2(1-x) with 0 log 0 = 0; x clamped to [0, 1].
inline double binary_entropy_bits(double x) {
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log2(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log2(1.0 - x);
    }
    return h;
}

/// Entanglement of formation in bits as a function of the concurrence.
inline double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy_bits((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

inline double entanglement_of_formation(const DensityMatrix &rho) {
    return eof_from_concurrence(concurrence(rho).concurrence);
}

struct PptResult {
    bool ppt = true;
    double min_eigenvalue = 0.0;
};

/// Peres test: positive partial transpose iff min eigenvalue >= -1e-10.
inline PptResult is_ppt(const DensityMatrix &rho) {
    const auto eig = hermitian_eigensystem(partial_transpose(rho));
    const double lowest = eig.values[3];
    return {lowest >= -kStateTolerance, lowest};
}

}  // namespace qent
