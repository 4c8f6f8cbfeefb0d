// Copyright 2026 The dqsd Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqsd/errors.h"
#include "dqsd/guessing.h"
#include "dqsd/pauli.h"
#include "oracles.h"

using namespace dqsd;

namespace {

const double kR = 1 / std::sqrt(2.0);

DensityMatrix ket(Complex a, Complex b) {
    std::array<Complex, 2> k{a, b};
    return DensityMatrix::from_ket(k);
}

}  // namespace

TEST(helstrom, examples) {
    EXPECT_NEAR(helstrom({0.5, 0.5, ket(1, 0), ket(0, 1)}), 1, 1e-12);
    EXPECT_NEAR(helstrom({0.3, 0.7, ket(1, 0), ket(1, 0)}), 0.7, 1e-12);
    EXPECT_NEAR(helstrom({0.5, 0.5, ket(1, 0), ket(kR, kR)}), (1 + kR) / 2, 1e-12);
}

TEST(helstrom, matches_brute_force) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 20; t++) {
        double q = u(rng);
        TwoStateEnsemble e{q, 1 - q, oracle::random_pure(1, rng), oracle::random_pure(1, rng)};
        EXPECT_NEAR(helstrom(e), oracle::helstrom_brute_force(q, 1 - q, e.bias_operator(), 0.01), 1e-3);
    }
}

TEST(restricted_guess, examples) {
    EXPECT_NEAR(restricted_guess({0.5, 0.5, ket(1, 0), ket(0, 1)}), 1, 1e-12);
    EXPECT_NEAR(restricted_guess({0.5, 0.5, ket(1, 0), ket(kR, kR)}), 0.75, 1e-12);
    EXPECT_NEAR(restricted_guess({0.2, 0.8, ket(kR, kR), ket(kR, kR)}), 0.8, 1e-12);
    EXPECT_NEAR(p_delta({0.5, 0.5, ket(1, 0), ket(kR, kR)}), 0.103553, 1e-6);
    EXPECT_NEAR(p_delta({0.5, 0.5, ket(1, 0), ket(0, 1)}), 0, 1e-12);
}

TEST(restricted_guess, ordering_invariant) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 500; t++) {
        double q = u(rng);
        TwoStateEnsemble e{q, 1 - q, oracle::random_pure(1, rng), oracle::random_pure(1, rng)};
        double h = helstrom(e), r = restricted_guess(e);
        EXPECT_GE(h, r - 1e-12);
        EXPECT_GE(r, std::max(q, 1 - q) - 1e-12);
        EXPECT_GE(p_delta(e), -1e-12);
    }
}

TEST(restricted_guess, third_axis_irrelevant_for_real_states) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    constexpr std::array<int, 3> all{1, 2, 3};
    for (int t = 0; t < 200; t++) {
        TwoStateEnsemble e{0.5 + u(rng) / 2, 0, real_state(u(rng), 1), real_state(u(rng), -1)};
        e.q2 = 1 - e.q1;
        EXPECT_NEAR(restricted_guess(e, all), restricted_guess(e), 1e-12);
    }
}

TEST(p_delta, invariant_under_quarter_turn_about_y) {
    // A 90 degree y-rotation maps sigma_z to sigma_x and sigma_x to -sigma_z.
    Operator ry{{kR, -kR}, {kR, kR}};
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 100; t++) {
        auto a = real_state(u(rng), 1), b = real_state(u(rng), -1);
        double q = (u(rng) + 1) / 2;
        TwoStateEnsemble e{q, 1 - q, a, b};
        TwoStateEnsemble rot{q, 1 - q, DensityMatrix(ry * a.op() * ry.adjoint()),
                             DensityMatrix(ry * b.op() * ry.adjoint())};
        EXPECT_NEAR(p_delta(e), p_delta(rot), 1e-12);
    }
}

TEST(real_guess, closed_form_matches_general_path) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 300; t++) {
        double q = (u(rng) + 1) / 2, c1 = u(rng), c2 = u(rng);
        int s1 = u(rng) > 0 ? 1 : -1, s2 = u(rng) > 0 ? 1 : -1;
        TwoStateEnsemble e{q, 1 - q, real_state(c1, s1), real_state(c2, s2)};
        auto g = real_guess(q, c1, s1, c2, s2);
        EXPECT_NEAR(g.p_g1, helstrom(e), 1e-12);
        EXPECT_NEAR(g.p_g2, restricted_guess(e), 1e-12);
    }
}

TEST(validation, bad_ensembles) {
    EXPECT_THROW(helstrom({0.6, 0.6, ket(1, 0), ket(0, 1)}), ValidationError);
    EXPECT_THROW(helstrom({0.5, 0.5, DensityMatrix::maximally_mixed(1), ket(0, 1)}), ValidationError);
    EXPECT_THROW(real_state(1.5, 1), ArgumentError);
    EXPECT_THROW(real_state(0.5, 0), ArgumentError);
}

TEST(sweep, coarse_grid_properties) {
    auto r = sweep(SweepGrid::uniform(0.25, 0.5));
    ASSERT_EQ(r.grid.q.size(), 5u);
    ASSERT_EQ(r.grid.c.size(), 5u);
    EXPECT_EQ(r.heatmap_q, 0.5);
    EXPECT_EQ(r.heatmap.size(), 100u);
    for (std::size_t k = 0; k < r.avg.size(); k++) {
        EXPECT_LE(r.avg[k], r.max[k]);
        EXPECT_GE(r.avg[k], 0);
        EXPECT_LE(r.max[k], 0.5);
    }
    for (const auto &p : r.heatmap) {
        if (p.c1 == p.c2 && p.d_sign1 == p.d_sign2) {
            EXPECT_NEAR(p.p_delta, 0, 1e-15);
        }
    }
    // q = 0 and q = 1 leave nothing to discriminate.
    EXPECT_NEAR(r.max.front(), 0, 1e-15);
    EXPECT_NEAR(r.max.back(), 0, 1e-15);
}

TEST(sweep, deterministic) {
    auto a = sweep(SweepGrid::uniform(0.1, 0.1));
    auto b = sweep(SweepGrid::uniform(0.1, 0.1));
    EXPECT_EQ(a.avg, b.avg);
    EXPECT_EQ(a.max, b.max);
    EXPECT_EQ(a.global_max, b.global_max);
}

TEST(sweep, grid_errors) {
    EXPECT_THROW(sweep(SweepGrid{}), ArgumentError);
    EXPECT_THROW(SweepGrid::uniform(0.3, 0.1), ArgumentError);
    EXPECT_THROW(SweepGrid::uniform(0, 0.1), ArgumentError);
    EXPECT_THROW(sweep(SweepGrid{{1.5}, {0}}), ArgumentError);
}

TEST(sweep, default_grid_statistics) {
    auto r = sweep(SweepGrid::defaults());
    EXPECT_EQ(r.grid.q.size(), 101u);
    EXPECT_EQ(r.grid.c.size(), 201u);
    EXPECT_LT(r.max_avg, 0.033);
    // The grid supremum approaches (2 - sqrt2)/4 from below.
    EXPECT_LT(r.global_max, (2 - std::sqrt(2.0)) / 4);
    EXPECT_GT(r.global_max, 0.1463);
}
