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
#include <numeric>

#include "qent/error.hpp"
#include "qent/linalg.hpp"

namespace qent {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kSimplexTolerance = 1e-12;

enum class Subsystem { A, B };

/// Two-qubit state: 4x4 Hermitian, unit trace, PSD (up to -1e-10), written in
/// the product basis |00>, |01>, |10>, |11>.
class DensityMatrix {
   public:
    /// Full validation, including an eigenvalue check for positivity.
    static DensityMatrix from_matrix(const Matrix4 &m) {
        check_hermitian_unit_trace(m);
        const auto eig = hermitian_eigensystem(m);
        if (eig.values[3] < -kStateTolerance) {
            throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
        }
        return DensityMatrix(m.hermitian_part());
    }

    /// For matrices that are PSD by construction (U diag(w) U^dagger and the
    /// like). Hermiticity and trace are still checked.
    static DensityMatrix from_psd_construction(const Matrix4 &m) {
        check_hermitian_unit_trace(m);
        return DensityMatrix(m.hermitian_part());
    }

    const Matrix4 &matrix() const noexcept {
        return matrix_;
    }

    /// U rho U^dagger.
    DensityMatrix conjugated_by(const Matrix4 &unitary) const {
        return from_psd_construction(unitary * matrix_ * unitary.adjoint());
    }

   private:
    explicit DensityMatrix(const Matrix4 &m) : matrix_(m) {
    }

    static void check_hermitian_unit_trace(const Matrix4 &m) {
        if (!m.all_finite()) {
            throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
        }
        if (!m.is_hermitian(kStateTolerance)) {
            throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
        }
        if (std::abs(m.trace() - 1.0) > kStateTolerance) {
            throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
        }
    }

    Matrix4 matrix_;
};

/// Single-qubit state obtained by tracing out one half of a pair, or built
/// directly for product-state fixtures.
class ReducedDensityMatrix {
   public:
    static ReducedDensityMatrix from_matrix(const Matrix2 &m) {
        if (!m.all_finite() || !m.is_hermitian(kStateTolerance)) {
            throw Error(ErrorCode::NotHermitian, "reduced state is not Hermitian");
        }
        if (std::abs(m.trace() - 1.0) > kStateTolerance) {
            throw Error(ErrorCode::InvalidState, "reduced state trace differs from 1");
        }
        if (hermitian_eigensystem(m).values[1] < -kStateTolerance) {
            throw Error(ErrorCode::InvalidState, "reduced state has a negative eigenvalue");
        }
        return ReducedDensityMatrix(m.hermitian_part());
    }

    const Matrix2 &matrix() const noexcept {
        return matrix_;
    }

   private:
    friend ReducedDensityMatrix partial_trace(const DensityMatrix &, Subsystem);

    explicit ReducedDensityMatrix(const Matrix2 &m) : matrix_(m) {
    }

    Matrix2 matrix_;
};

/// rho = sum_i weights[i] |frame_i><frame_i|; frame columns are the projector
/// directions.
struct SpectralForm {
    std::array<double, 4> weights{};
    Matrix4 frame = Matrix4::identity();
};

namespace detail {

inline void check_simplex(const std::array<double, 4> &w) {
    double total = 0.0;
    for (double x : w) {
        if (!std::isfinite(x) || x < 0.0) {
            throw Error(ErrorCode::InvalidWeights, "weights must be finite and non-negative");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > kSimplexTolerance) {
        throw Error(ErrorCode::InvalidWeights, "weights must sum to 1");
    }
}

}  // namespace detail

inline DensityMatrix from_spectral(const SpectralForm &s) {
    detail::check_simplex(s.weights);
    if (!s.frame.all_finite() || orthonormality_error(s.frame) > 1e-12) {
        throw Error(ErrorCode::NonOrthonormalFrame, "projector frame is not orthonormal");
    }
    return DensityMatrix::from_psd_construction(s.frame * Matrix4::diagonal(s.weights) * s.frame.adjoint());
}

/// Bell vectors in the order Phi+, Phi-, Psi+, Psi-:
/// Phi+- = (|00> +- |11>)/sqrt2, Psi+- = (|01> +- |10>)/sqrt2.
enum class BellState { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline std::array<Complex, 4> bell_vector(BellState which) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::PhiPlus:
            return {h, 0.0, 0.0, h};
        case BellState::PhiMinus:
            return {h, 0.0, 0.0, -h};
        case BellState::PsiPlus:
            return {0.0, h, h, 0.0};
        case BellState::PsiMinus:
            return {0.0, h, -h, 0.0};
    }
    return {};
}

/// Columns are the Bell vectors in BellState order.
inline Matrix4 bell_frame() {
    Matrix4 f;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto v = bell_vector(static_cast<BellState>(k));
        for (std::size_t r = 0; r < 4; ++r) {
            f(r, k) = v[r];
        }
    }
    return f;
}

inline DensityMatrix pure_state(const std::array<Complex, 4> &psi) {
    double norm2 = 0.0;
    for (const auto &a : psi) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kStateTolerance) {
        throw Error(ErrorCode::InvalidState, "state vector is not normalized");
    }
    return DensityMatrix::from_psd_construction(Matrix4::projector(psi));
}

inline DensityMatrix bell_state(BellState which) {
    return pure_state(bell_vector(which));
}

inline DensityMatrix maximally_mixed() {
    return DensityMatrix::from_psd_construction(Matrix4::diagonal({0.25, 0.25, 0.25, 0.25}));
}

/// sum_i weights[i] |B_i><B_i| with weights ordered as BellState.
inline DensityMatrix bell_diagonal(const std::array<double, 4> &weights) {
    detail::check_simplex(weights);
    const Matrix4 f = bell_frame();
    return DensityMatrix::from_psd_construction(f * Matrix4::diagonal(weights) * f.adjoint());
}

/// p |Phi+><Phi+| + (1 - p) I/4.
inline DensityMatrix werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "Werner mixing parameter must lie in [0, 1]");
    }
    const double mixed = (1.0 - p) / 4.0;
    return bell_diagonal({p + mixed, mixed, mixed, mixed});
}

inline DensityMatrix product_state(const ReducedDensityMatrix &a, const ReducedDensityMatrix &b) {
    return DensityMatrix::from_psd_construction(kron(a.matrix(), b.matrix()));
}

/// Reduced state of the subsystem `keep`.
inline ReducedDensityMatrix partial_trace(const DensityMatrix &rho, Subsystem keep) {
    const Matrix4 &m = rho.matrix();
    Matrix2 out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < 2; ++k) {
                acc += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
            }
            out(i, j) = acc;
        }
    }
    return ReducedDensityMatrix(out);
}

/// Transpose over the indices of subsystem B. The result is Hermitian with
/// unit trace but need not be positive.
inline Matrix4 partial_transpose(const Matrix4 &m) {
    Matrix4 out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
                }
            }
        }
    }
    return out;
}

inline Matrix4 partial_transpose(const DensityMatrix &rho) {
    return partial_transpose(rho.matrix());
}

}  // namespace qent
