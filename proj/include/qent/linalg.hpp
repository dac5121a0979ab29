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
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>

#include "qent/error.hpp"

namespace qent {

using Complex = std::complex<double>;

template <std::size_t N>
concept QubitDimension = (N == 2 || N == 4);

/// Dense N x N complex matrix, row-major, stored by value.
///
/// Only the single-qubit (N = 2) and two-qubit (N = 4) sizes are instantiated.
/// Dimensions are part of the type, so mixing sizes is a compile error.
template <std::size_t N>
    requires QubitDimension<N>
class SquareMatrix {
   public:
    static constexpr std::size_t dim = N;

    constexpr SquareMatrix() : entries_{} {
    }

    static constexpr SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static constexpr SquareMatrix diagonal(const std::array<double, N> &d) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    /// Outer product |v><v|.
    static constexpr SquareMatrix projector(const std::array<Complex, N> &v) {
        SquareMatrix m;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                m(r, c) = v[r] * std::conj(v[c]);
            }
        }
        return m;
    }

    constexpr Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * N + col];
    }
    constexpr const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * N + col];
    }

    std::array<Complex, N> column(std::size_t col) const {
        std::array<Complex, N> v;
        for (std::size_t r = 0; r < N; ++r) {
            v[r] = (*this)(r, col);
        }
        return v;
    }

    SquareMatrix &operator+=(const SquareMatrix &other) {
        for (std::size_t k = 0; k < N * N; ++k) {
            entries_[k] += other.entries_[k];
        }
        return *this;
    }
    SquareMatrix &operator-=(const SquareMatrix &other) {
        for (std::size_t k = 0; k < N * N; ++k) {
            entries_[k] -= other.entries_[k];
        }
        return *this;
    }
    SquareMatrix &operator*=(Complex scale) {
        for (auto &e : entries_) {
            e *= scale;
        }
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix &b) {
        return a += b;
    }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix &b) {
        return a -= b;
    }
    friend SquareMatrix operator*(SquareMatrix a, Complex scale) {
        return a *= scale;
    }
    friend SquareMatrix operator*(Complex scale, SquareMatrix a) {
        return a *= scale;
    }
    friend SquareMatrix operator*(const SquareMatrix &a, const SquareMatrix &b) {
        SquareMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t k = 0; k < N; ++k) {
                const Complex ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    friend bool operator==(const SquareMatrix &a, const SquareMatrix &b) = default;

    SquareMatrix adjoint() const {
        SquareMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    SquareMatrix conjugate() const {
        SquareMatrix out;
        for (std::size_t k = 0; k < N * N; ++k) {
            out.entries_[k] = std::conj(entries_[k]);
        }
        return out;
    }

    SquareMatrix transpose() const {
        SquareMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &e : entries_) {
            s += std::norm(e);
        }
        return std::sqrt(s);
    }

    bool all_finite() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Complex &e) {
            return std::isfinite(e.real()) && std::isfinite(e.imag());
        });
    }

    /// Entrywise |M(r,c) - conj(M(c,r))| <= tol.
    bool is_hermitian(double tol) const {
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = r; c < N; ++c) {
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    /// (M + M^dagger) / 2.
    SquareMatrix hermitian_part() const {
        SquareMatrix out = *this + adjoint();
        out *= 0.5;
        return out;
    }

   private:
    std::array<Complex, N * N> entries_;
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Tensor product in the product basis |00>, |01>, |10>, |11> (first factor is
/// the most significant index).
inline Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
    Matrix4 out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

inline Matrix2 pauli_x() {
    Matrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

/// sigma_y = [[0, -i], [i, 0]].
inline Matrix2 pauli_y() {
    Matrix2 m;
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

inline Matrix2 pauli_z() {
    return Matrix2::diagonal({1.0, -1.0});
}

template <std::size_t N>
    requires QubitDimension<N>
struct EigenSystem {
    /// Sorted descending.
    std::array<double, N> values{};
    /// Column k is the eigenvector of values[k].
    SquareMatrix<N> vectors;

    SquareMatrix<N> reconstruct() const {
        return vectors * SquareMatrix<N>::diagonal(values) * vectors.adjoint();
    }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const SquareMatrix<N> &a) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace detail

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each (p, q) rotation first removes the phase of a_pq with a diagonal unitary,
/// then applies the real symmetric Schur rotation that zeroes it. Sweeps stop
/// once the off-diagonal Frobenius norm drops below 1e-14 (relative to
/// max(1, |M|_F)). Eigenvalues are sorted descending with a stable sort, so
/// ties keep the order the sweeps produced.
template <std::size_t N>
    requires QubitDimension<N>
EigenSystem<N> hermitian_eigensystem(const SquareMatrix<N> &m, double hermitian_tol = kHermitianTolerance) {
    if (!m.all_finite()) {
        throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
    }
    if (!m.is_hermitian(hermitian_tol)) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
    }

    SquareMatrix<N> a = m.hermitian_part();
    SquareMatrix<N> v = SquareMatrix<N>::identity();
    const double threshold = kJacobiOffDiagonalTolerance * std::max(1.0, a.frobenius_norm());

    int sweep = 0;
    while (detail::off_diagonal_norm(a) >= threshold) {
        if (sweep++ >= kJacobiMaxSweeps) {
            throw Error(ErrorCode::NoConvergence, "Jacobi sweeps exceeded the iteration cap");
        }
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = D * R with D = diag(1, conj(phase)) on (p, q) and R = [[c, s], [-s, c]].
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                // a <- a * G
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                // a <- G^dagger * a
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // v <- v * G
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

/// Largest |<v_i, v_j> - delta_ij| over the columns of m.
template <std::size_t N>
    requires QubitDimension<N>
double orthonormality_error(const SquareMatrix<N> &m) {
    const SquareMatrix<N> gram = m.adjoint() * m;
    double worst = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            worst = std::max(worst, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace qent
