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

#ifndef DQSD_GUESSING_H
#define DQSD_GUESSING_H

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dqsd/operator.h"

namespace dqsd {

/// {q1, psi1; q2, psi2} with single-qubit pure members.
struct TwoStateEnsemble {
    double q1 = 0.5;
    double q2 = 0.5;
    DensityMatrix psi1;
    DensityMatrix psi2;

    /// Throws ValidationError for bad priors or mixed members, ArgumentError for non-qubit members.
    void validate(double tol = kTolerance) const;
    /// q1 psi1 - q2 psi2.
    Operator bias_operator() const;
};

/// 1/2 + 1/2 ||q1 psi1 - q2 psi2||_1.
double helstrom(const TwoStateEnsemble &ensemble);

/// 1/2 + 1/2 max_x sum_a |Tr[pi_{a|x} X]| over the Pauli axes {1, 2}.
double restricted_guess(const TwoStateEnsemble &ensemble);
/// Same over an explicit set of axes drawn from {1, 2, 3}.
double restricted_guess(const TwoStateEnsemble &ensemble, std::span<const int> axes);

/// helstrom - restricted_guess.
double p_delta(const TwoStateEnsemble &ensemble);

/// (c|0> + d|1>) with d = d_sign * sqrt(1 - c^2).
DensityMatrix real_state(double c, int d_sign);

/// Closed forms for the real 2x2 case X = [[a, b], [b, d]].
struct RealGuess {
    double p_g1;
    double p_g2;
};
RealGuess real_guess(double q, double c1, int d_sign1, double c2, int d_sign2);

struct SweepGrid {
    std::vector<double> q;
    std::vector<double> c;

    /// q = 0, step, ..., 1 and c = -1, -1 + step, ..., 1. Throws ArgumentError unless
    /// each step divides its interval.
    static SweepGrid uniform(double q_step, double c_step);
    static SweepGrid defaults() { return uniform(0.01, 0.01); }
};

struct SweepPoint {
    double q;
    double c1;
    int d_sign1;
    double c2;
    int d_sign2;
    double p_g1;
    double p_g2;
    double p_delta;
};

/// Statistics over all ordered pairs of grid states (each c with both signs of d).
struct SweepResult {
    SweepGrid grid;
    std::vector<double> avg;  ///< per q
    std::vector<double> max;  ///< per q
    /// Every pair at the grid value of q closest to 1/2, row-major in (c1, sign1) then (c2, sign2).
    std::vector<SweepPoint> heatmap;
    double heatmap_q = 0.5;

    double global_max = 0;
    SweepPoint global_argmax{};
    double max_avg = 0;
    double max_avg_q = 0;
};

/// Throws ArgumentError for empty grids or values outside q in [0, 1], c in [-1, 1].
SweepResult sweep(const SweepGrid &grid);

}  // namespace dqsd

#endif  // DQSD_GUESSING_H
