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

#include "dqsd/certify.h"
#include "dqsd/errors.h"
#include "dqsd/netsim.h"
#include "dqsd/pauli.h"

using namespace dqsd;

TEST(certify, honest_exact_passes) {
    auto r = certify(p1_exact(honest_strategy()));
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.beta, 6 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(r.shots_string(), "exact");
    EXPECT_TRUE(certify(p1_exact(honest_strategy()), 0.0).passed || r.beta >= kMaxThreeChsh - 1e-15);
}

TEST(certify, conjugated_passes_with_identical_values) {
    auto h = certify(p1_exact(honest_strategy()));
    auto c = certify(p1_exact(conjugated_strategy()));
    EXPECT_TRUE(c.passed);
    EXPECT_NEAR(c.beta, h.beta, 1e-12);
    for (int b = 0; b < 4; b++) {
        EXPECT_NEAR(c.gamma[b], h.gamma[b], 1e-12);
    }
}

TEST(certify, werner_fails) {
    auto r = certify(p1_exact(werner_strategy(0.9)));
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.beta, 5.4 * std::sqrt(2.0), 1e-12);
}

TEST(certify, classical_fails_without_throwing) {
    auto r = certify(p1_exact(classical_strategy({})));
    EXPECT_FALSE(r.passed);
    EXPECT_TRUE(std::isnan(r.gamma[1]));
}

TEST(certify, missing_inputs) {
    std::vector<PartyMeasurements> parties{{"A", {observable_povm(1, pauli(Pauli::Z))}},
                                           {"B", {observable_povm(1, pauli(Pauli::Z))}},
                                           {"C", {observable_povm(1, pauli(Pauli::Z))}}};
    auto table = exact_correlation(DensityMatrix::maximally_mixed(3), parties);
    EXPECT_THROW(certify(table), ArgumentError);
}

TEST(certify, sampled_honest_passes_across_seeds) {
    auto p1 = p1_exact(honest_strategy());
    int passed = 0;
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        auto r = certify_with_tolerance(sample(p1, 1000000, seed), 0.05);
        passed += r.passed;
        EXPECT_EQ(r.shots_string(), "1000000");
    }
    EXPECT_GE(passed, 99);
}

TEST(certify, standard_errors_scale_with_shots) {
    auto p1 = p1_exact(honest_strategy());
    auto small = certification_standard_errors(sample(p1, 10000, 1));
    auto large = certification_standard_errors(sample(p1, 1000000, 1));
    EXPECT_NEAR(small.beta / large.beta, 10, 0.5);
    // Each beta correlator is +-1/sqrt2 on the honest strategy, pooled over 2 Charlie inputs.
    EXPECT_NEAR(large.beta, std::sqrt(12 * 0.5 / 2e6), 1e-4);
    EXPECT_TRUE(certify(sample(p1, 10000, 1)).passed);
    EXPECT_FALSE(certify(sample(p1_exact(werner_strategy(0.8)), 100000, 1)).passed);
}

TEST(requires_mdi, examples) {
    const double r = 1 / std::sqrt(2.0);
    std::array<Complex, 2> k0{1, 0}, kp{r, r};
    EXPECT_TRUE(requires_mdi(right_circular_state(), left_circular_state()));
    EXPECT_FALSE(requires_mdi(DensityMatrix::from_ket(k0), DensityMatrix::from_ket(kp)));
    PureStateParams a{std::numbers::pi / 4, std::numbers::pi / 3};
    PureStateParams b{std::numbers::pi / 4, 2 * std::numbers::pi - std::numbers::pi / 3};
    EXPECT_TRUE(requires_mdi(a.state(), b.state()));
    EXPECT_THROW(requires_mdi(a.state(), a.state()), DegenerateEnsembleError);
}

TEST(mdi_probe, resolves_sign) {
    auto h = mdi_probe(honest_strategy());
    EXPECT_EQ(h.sign, 1);
    EXPECT_NEAR(h.probe_outcome_distribution[0], 1, 1e-12);
    auto c = mdi_probe(conjugated_strategy());
    EXPECT_EQ(c.sign, -1);
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        EXPECT_EQ(mdi_probe(honest_strategy(), 10000, seed).sign, 1);
        EXPECT_EQ(mdi_probe(conjugated_strategy(), 10000, seed).sign, -1);
    }
}

TEST(mdi_probe, inconclusive_on_fully_noisy_devices) {
    EXPECT_THROW(mdi_probe(werner_strategy(0.0)), InconclusiveError);
    EXPECT_THROW(mdi_probe(werner_strategy(0.0), 1000, 3), InconclusiveError);
}
