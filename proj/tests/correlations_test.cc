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
#include <random>

#include "dqsd/correlations.h"
#include "dqsd/errors.h"
#include "dqsd/netsim.h"
#include "dqsd/pauli.h"
#include "oracles.h"

using namespace dqsd;

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<PartyMeasurements> two_parties(std::vector<Operator> a, std::vector<Operator> b) {
    std::vector<PartyMeasurements> parties{{"A", {}}, {"B", {}}};
    for (std::size_t i = 0; i < a.size(); i++) {
        parties[0].settings.push_back(observable_povm(static_cast<int>(i) + 1, a[i]));
    }
    for (std::size_t i = 0; i < b.size(); i++) {
        parties[1].settings.push_back(observable_povm(static_cast<int>(i) + 1, b[i]));
    }
    return parties;
}

}  // namespace

TEST(table_shape, index_round_trip) {
    TableShape shape({{"A", {1, 2}, {{1, -1}, {1, -1}}}, {"B", {0, 5}, {{0, 1, 2, 3}, {1, -1}}}});
    EXPECT_EQ(shape.num_inputs(), 4u);
    std::size_t total = 0;
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto in = shape.input_tuple(i);
        EXPECT_EQ(shape.input_index(in), i);
        for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
            EXPECT_EQ(shape.outcome_index(i, shape.outcome_tuple(i, o)), o);
        }
        total += shape.num_outcomes(i);
    }
    EXPECT_EQ(shape.total_size(), total);
    std::array<int, 2> missing{3, 0};
    EXPECT_FALSE(shape.find_input(missing));
    EXPECT_THROW(shape.input_index(missing), ArgumentError);
}

TEST(exact_correlation, phi0_sigma1) {
    auto parties = two_parties({pauli(Pauli::Z)}, {pauli(Pauli::Z)});
    auto table = exact_correlation(bell_state(0), parties);
    std::array<int, 2> in{1, 1};
    std::array<int, 2> pp{1, 1}, mm{-1, -1}, pm{1, -1}, mp{-1, 1};
    EXPECT_NEAR(table.prob(in, pp), 0.5, 1e-12);
    EXPECT_NEAR(table.prob(in, mm), 0.5, 1e-12);
    EXPECT_NEAR(table.prob(in, pm), 0, 1e-12);
    EXPECT_NEAR(table.prob(in, mp), 0, 1e-12);
}

TEST(exact_correlation, product_eigenstate_and_normalization) {
    std::array<Complex, 4> k00{1, 0, 0, 0};
    auto parties = two_parties({pauli(Pauli::Z), pauli(Pauli::X)}, {pauli(Pauli::Z), pauli(Pauli::Y)});
    auto table = exact_correlation(DensityMatrix::from_ket(k00), parties);
    std::array<int, 2> in{1, 1}, pp{1, 1};
    EXPECT_NEAR(table.prob(in, pp), 1, 1e-12);
    EXPECT_NO_THROW(table.validate());

    std::mt19937_64 rng(1);
    auto rand_table = exact_correlation(oracle::random_pure(2, rng), parties);
    for (std::size_t i = 0; i < rand_table.shape().num_inputs(); i++) {
        double s = 0;
        for (double p : rand_table.distribution(i)) {
            s += p;
        }
        EXPECT_NEAR(s, 1, 1e-12);
    }
}

TEST(exact_correlation, rejects_non_povm) {
    std::vector<PartyMeasurements> parties{{"A", {Povm{1, {1, -1}, {projector(1, 1), projector(1, 1)}}}}};
    EXPECT_THROW(exact_correlation(DensityMatrix::maximally_mixed(1), parties), ValidationError);
}

TEST(correlator, phi0_values) {
    auto parties = two_parties({pauli(Pauli::Z), pauli(Pauli::X)}, {pauli(Pauli::Z), pauli(Pauli::X)});
    auto table = exact_correlation(bell_state(0), parties);
    EXPECT_NEAR(correlator(table, 1, 1), 1, 1e-12);
    EXPECT_NEAR(correlator(table, 1, 2), 0, 1e-12);
    EXPECT_NEAR(correlator(table, 2, 2), 1, 1e-12);
}

TEST(correlator, rejects_non_binary_outcomes) {
    auto table = p1_exact(honest_strategy());
    std::array<PartyInput, 1> bell{{{1, kBellInput}}};
    EXPECT_THROW(correlator(table, bell), ArgumentError);
    EXPECT_THROW(correlator(table, 9, 1), ArgumentError);
}

TEST(chsh, ideal_deterministic_and_mixed) {
    Operator z = pauli(Pauli::Z), x = pauli(Pauli::X);
    Operator bp = Complex(1 / kSqrt2) * (z + x), bm = Complex(1 / kSqrt2) * (z - x);
    auto parties = two_parties({z, x}, {bp, bm});
    EXPECT_NEAR(chsh(exact_correlation(bell_state(0), parties), 1, 2, 1, 2), 2 * kSqrt2, 1e-12);
    EXPECT_NEAR(chsh(exact_correlation(DensityMatrix::maximally_mixed(2), parties), 1, 2, 1, 2), 0, 1e-12);

    Operator id = Operator::identity(2);
    auto fixed = two_parties({id, id}, {id, id});
    EXPECT_NEAR(chsh(exact_correlation(DensityMatrix::maximally_mixed(2), fixed), 1, 2, 1, 2), 2, 1e-12);
}

TEST(three_chsh, ideal_matches_oracle) {
    EXPECT_NEAR(three_chsh(p1_exact(honest_strategy())), oracle::ideal_three_chsh(), 1e-12);
    EXPECT_NEAR(three_chsh(p1_exact(honest_strategy())), 6 * kSqrt2, 1e-12);
    EXPECT_NEAR(three_chsh(p1_exact(conjugated_strategy())), 6 * kSqrt2, 1e-12);
}

TEST(three_chsh, werner_linearity) {
    for (double p : {0.0, 0.3, 0.9, 1.0}) {
        EXPECT_NEAR(three_chsh(p1_exact(werner_strategy(p))), 6 * kSqrt2 * p, 1e-12) << p;
    }
}

TEST(three_chsh, missing_inputs) {
    auto parties = two_parties({pauli(Pauli::Z)}, {pauli(Pauli::Z)});
    EXPECT_THROW(three_chsh(exact_correlation(bell_state(0), parties)), ArgumentError);
}

TEST(gamma, ideal_forms) {
    auto table = p1_exact(honest_strategy());
    for (int b = 0; b < 4; b++) {
        EXPECT_NEAR(gamma_chsh(table, b), 2 * kSqrt2, 1e-12) << b;
    }
    EXPECT_NEAR(gamma_chsh_form(table, 0, 0), 2 * kSqrt2, 1e-12);
    // The first displayed form, evaluated on b = 3 statistics, is at its minimum.
    EXPECT_NEAR(gamma_chsh_form(table, 0, 3), -2 * kSqrt2, 1e-12);
    EXPECT_THROW(gamma_chsh_form(table, 4, 0), ArgumentError);
}

TEST(gamma, classical_bound_and_conditioning) {
    for (int bell = 0; bell < 4; bell++) {
        ClassicalAssignment as;
        as.bob_bell = bell;
        as.charlie = {1, -1};
        auto table = p1_exact(classical_strategy(as));
        for (int form = 0; form < 4; form++) {
            EXPECT_LE(std::abs(gamma_chsh_form(table, form, bell)), 2 + 1e-12);
        }
        EXPECT_THROW(conditional_correlator(table, 1, 1, (bell + 1) % 4), ConditioningError);
    }
}
