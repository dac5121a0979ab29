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


#include "qent/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "qent/random.hpp"
#include "qent/sampler.hpp"

using namespace qent;

namespace {

std::array<Complex, 4> random_pure_vector(RandomStream &rng) {
    const Matrix4 u = sample_haar_unitary(rng);
    return {u(0, 0), u(1, 0), u(2, 0), u(3, 0)};
}

}  // namespace

TEST(concurrence, examples) {
    for (auto b : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus}) {
        EXPECT_NEAR(concurrence(bell_state(b)).concurrence, 1.0, 1e-12);
    }
    EXPECT_NEAR(concurrence(maximally_mixed()).concurrence, 0.0, 1e-12);
    const auto zero = ReducedDensityMatrix::from_matrix(Matrix2::diagonal({1.0, 0.0}));
    EXPECT_NEAR(concurrence(product_state(zero, zero)).concurrence, 0.0, 1e-12);
    EXPECT_NEAR(concurrence(werner(0.5)).concurrence, 0.25, 1e-12);
}

TEST(concurrence, product_pure_state_is_zero) {
    const auto zero = ReducedDensityMatrix::from_matrix(Matrix2::diagonal({1.0, 0.0}));
    const auto one = ReducedDensityMatrix::from_matrix(Matrix2::diagonal({0.0, 1.0}));
    EXPECT_EQ(concurrence(product_state(zero, one)).concurrence, 0.0);
    RandomStream rng({20, 0});
    for (int i = 0; i < 200; ++i) {
        const auto u = sample_haar_unitary_2(rng);
        const auto v = sample_haar_unitary_2(rng);
        const auto a = ReducedDensityMatrix::from_matrix(u * zero.matrix() * u.adjoint());
        const auto b = ReducedDensityMatrix::from_matrix(v * zero.matrix() * v.adjoint());
        EXPECT_NEAR(concurrence(product_state(a, b)).concurrence, 0.0, 1e-10);
    }
}

TEST(concurrence, werner_grid_closed_form) {
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        EXPECT_NEAR(concurrence(werner(p)).concurrence, std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-10) << p;
    }
}

TEST(concurrence, bell_diagonal_closed_form) {
    RandomStream rng({21, 0});
    for (int i = 0; i < 2000; ++i) {
        const auto w = sample_simplex(rng);
        const double top = *std::max_element(w.begin(), w.end());
        EXPECT_NEAR(concurrence(bell_diagonal(w)).concurrence, std::max(0.0, 2.0 * top - 1.0), 1e-10);
    }
}

TEST(concurrence, pure_states_match_linear_entropy) {
    RandomStream rng({22, 0});
    for (int i = 0; i < 1000; ++i) {
        const auto rho = pure_state(random_pure_vector(rng));
        const Matrix2 ra = partial_trace(rho, Subsystem::A).matrix();
        const double purity = (ra * ra).trace().real();
        const double c = concurrence(rho).concurrence;
        EXPECT_NEAR(c * c, 2.0 * (1.0 - purity), 1e-10);
    }
}

TEST(concurrence, range_and_root_ordering) {
    RandomStream rng({23, 0});
    for (int i = 0; i < 5000; ++i) {
        const auto d = concurrence(sample_state(rng, EnsembleKind::Full));
        ASSERT_GE(d.concurrence, 0.0);
        ASSERT_LE(d.concurrence, 1.0);
        for (std::size_t k = 1; k < 4; ++k) {
            ASSERT_GE(d.roots[k - 1], d.roots[k]);
        }
    }
}

TEST(concurrence, local_unitary_invariance) {
    RandomStream rng({24, 0});
    for (int i = 0; i < 1000; ++i) {
        const auto rho = sample_state(rng, EnsembleKind::Full);
        const Matrix4 local = kron(sample_haar_unitary_2(rng), sample_haar_unitary_2(rng));
        const auto moved = rho.conjugated_by(local);
        EXPECT_NEAR(concurrence(rho).concurrence, concurrence(moved).concurrence, 1e-10);
        EXPECT_NEAR(is_ppt(rho).min_eigenvalue, is_ppt(moved).min_eigenvalue, 1e-10);
    }
}

TEST(concurrence, agrees_with_ppt_on_two_qubits) {
    RandomStream rng({25, 0});
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto rho = sample_state(rng, EnsembleKind::Full);
        const bool entangled = concurrence(rho).concurrence > 1e-8;
        const auto ppt = is_ppt(rho);
        if (entangled == ppt.ppt && std::abs(ppt.min_eigenvalue) > 1e-8) {
            ++disagreements;
        }
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(entanglement_of_formation, values) {
    EXPECT_EQ(eof_from_concurrence(0.0), 0.0);
    EXPECT_NEAR(eof_from_concurrence(1.0), 1.0, 1e-15);
    // h(0.9) for C = 0.6, from an arbitrary-precision reference.
    EXPECT_NEAR(eof_from_concurrence(0.6), 0.46899559358928122, 1e-12);
    EXPECT_NEAR(entanglement_of_formation(bell_state(BellState::PsiMinus)), 1.0, 1e-10);
    EXPECT_EQ(binary_entropy_bits(0.0), 0.0);
    EXPECT_EQ(binary_entropy_bits(1.0), 0.0);
    EXPECT_DOUBLE_EQ(binary_entropy_bits(0.5), 1.0);
}

TEST(entanglement_of_formation, monotone_in_concurrence) {
    double prev = -1.0;
    for (int k = 0; k <= 10000; ++k) {
        const double e = eof_from_concurrence(k / 10000.0);
        ASSERT_GE(e, prev);
        ASSERT_GE(e, 0.0);
        ASSERT_LE(e, 1.0);
        prev = e;
    }
}

TEST(ppt, examples) {
    const auto bell = is_ppt(bell_state(BellState::PhiPlus));
    EXPECT_FALSE(bell.ppt);
    EXPECT_NEAR(bell.min_eigenvalue, -0.5, 1e-12);
    const auto mixed = is_ppt(maximally_mixed());
    EXPECT_TRUE(mixed.ppt);
    EXPECT_NEAR(mixed.min_eigenvalue, 0.25, 1e-15);
    const auto boundary = is_ppt(werner(1.0 / 3.0));
    EXPECT_TRUE(boundary.ppt);
    EXPECT_NEAR(boundary.min_eigenvalue, 0.0, 1e-12);
    EXPECT_FALSE(is_ppt(werner(0.34)).ppt);
    EXPECT_TRUE(is_ppt(werner(0.32)).ppt);
}

TEST(spin_flip, maps_bell_states_to_themselves) {
    for (auto b : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus}) {
        const Matrix4 &m = bell_state(b).matrix();
        const Matrix4 flipped = spin_flip(m);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                EXPECT_LT(std::abs(flipped(r, c) - m(r, c)), 1e-15);
            }
        }
    }
}
