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

#include "dqsd/guessing.h"

#include <algorithm>
#include <cmath>

#include "dqsd/errors.h"
#include "dqsd/pauli.h"

namespace dqsd {

namespace {

std::vector<double> uniform_points(double lo, double hi, double step, const char *name) {
    if (!(step > 0) || step > hi - lo) {
        throw ArgumentError(std::string(name) + " step must lie in (0, " + std::to_string(hi - lo) + "]");
    }
    double n = (hi - lo) / step;
    auto count = static_cast<std::size_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(count)) > 1e-9 * std::max(1.0, n)) {
        throw ArgumentError(std::string(name) + " step must divide [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
    std::vector<double> out(count + 1);
    for (std::size_t i = 0; i <= count; i++) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
    }
    return out;
}

struct RealState {
    double c;
    int sign;
    double d;
};

}  // namespace

void TwoStateEnsemble::validate(double tol) const {
    if (!(q1 >= 0 && q1 <= 1 && q2 >= 0 && q2 <= 1) || std::abs(q1 + q2 - 1) > tol) {
        throw ValidationError("priors must lie in [0, 1] and sum to 1");
    }
    if (psi1.num_qubits() != 1 || psi2.num_qubits() != 1) {
        throw ArgumentError("ensemble members must be single-qubit states");
    }
    if (!psi1.is_pure(tol) || !psi2.is_pure(tol)) {
        throw ValidationError("ensemble members must be pure");
    }
}

Operator TwoStateEnsemble::bias_operator() const {
    return q1 * psi1.op() - q2 * psi2.op();
}

double helstrom(const TwoStateEnsemble &ensemble) {
    ensemble.validate();
    return 0.5 + 0.5 * trace_norm(ensemble.bias_operator());
}

double restricted_guess(const TwoStateEnsemble &ensemble, std::span<const int> axes) {
    ensemble.validate();
    if (axes.empty()) {
        throw ArgumentError("need at least one measurement axis");
    }
    Operator x = ensemble.bias_operator();
    double best = 0;
    for (int axis : axes) {
        double s = 0;
        for (int a : {1, -1}) {
            s += std::abs(trace_of_product(projector(a, axis), x).real());
        }
        best = std::max(best, s);
    }
    return 0.5 + 0.5 * best;
}

double restricted_guess(const TwoStateEnsemble &ensemble) {
    constexpr std::array<int, 2> axes{1, 2};
    return restricted_guess(ensemble, axes);
}

double p_delta(const TwoStateEnsemble &ensemble) {
    return helstrom(ensemble) - restricted_guess(ensemble);
}

DensityMatrix real_state(double c, int d_sign) {
    if (!(c >= -1 && c <= 1)) {
        throw ArgumentError("c must lie in [-1, 1]");
    }
    if (d_sign != 1 && d_sign != -1) {
        throw ArgumentError("d sign must be +1 or -1");
    }
    std::array<Complex, 2> ket{Complex(c, 0), Complex(d_sign * std::sqrt(std::max(0.0, 1 - c * c)), 0)};
    return DensityMatrix::from_ket(ket);
}

RealGuess real_guess(double q, double c1, int d_sign1, double c2, int d_sign2) {
    double d1 = d_sign1 * std::sqrt(std::max(0.0, 1 - c1 * c1));
    double d2 = d_sign2 * std::sqrt(std::max(0.0, 1 - c2 * c2));
    double p = 1 - q;
    double a = q * c1 * c1 - p * c2 * c2;
    double b = q * c1 * d1 - p * c2 * d2;
    double d = q * d1 * d1 - p * d2 * d2;
    double t = a + d;
    double norm1 = std::max(std::abs(t), 2 * std::hypot((a - d) / 2, b));
    double norm_z = std::abs(a) + std::abs(d);
    double norm_x = std::abs(t / 2 + b) + std::abs(t / 2 - b);
    return {0.5 + 0.5 * norm1, 0.5 + 0.5 * std::max(norm_z, norm_x)};
}

SweepGrid SweepGrid::uniform(double q_step, double c_step) {
    return {uniform_points(0, 1, q_step, "q"), uniform_points(-1, 1, c_step, "c")};
}

SweepResult sweep(const SweepGrid &grid) {
    if (grid.q.empty() || grid.c.empty()) {
        throw ArgumentError("sweep grids must be nonempty");
    }
    for (double q : grid.q) {
        if (!(q >= 0 && q <= 1)) {
            throw ArgumentError("q grid values must lie in [0, 1]");
        }
    }
    std::vector<RealState> states;
    for (double c : grid.c) {
        if (!(c >= -1 && c <= 1)) {
            throw ArgumentError("c grid values must lie in [-1, 1]");
        }
        for (int s : {1, -1}) {
            states.push_back({c, s, s * std::sqrt(std::max(0.0, 1 - c * c))});
        }
    }

    SweepResult result;
    result.grid = grid;
    std::size_t heat = 0;
    for (std::size_t k = 1; k < grid.q.size(); k++) {
        if (std::abs(grid.q[k] - 0.5) < std::abs(grid.q[heat] - 0.5)) {
            heat = k;
        }
    }
    result.heatmap_q = grid.q[heat];
    result.global_max = -1;
    result.max_avg = -1;

    const double pairs = static_cast<double>(states.size()) * static_cast<double>(states.size());
    for (std::size_t k = 0; k < grid.q.size(); k++) {
        double q = grid.q[k];
        double sum = 0;
        double best = -1;
        for (const auto &s1 : states) {
            // Row sums keep the accumulation order fixed and limit rounding drift.
            double row = 0;
            for (const auto &s2 : states) {
                RealGuess g = real_guess(q, s1.c, s1.sign, s2.c, s2.sign);
                double pd = std::max(0.0, g.p_g1 - g.p_g2);
                row += pd;
                if (pd > best) {
                    best = pd;
                }
                if (pd > result.global_max) {
                    result.global_max = pd;
                    result.global_argmax = {q, s1.c, s1.sign, s2.c, s2.sign, g.p_g1, g.p_g2, pd};
                }
                if (k == heat) {
                    result.heatmap.push_back({q, s1.c, s1.sign, s2.c, s2.sign, g.p_g1, g.p_g2, pd});
                }
            }
            sum += row;
        }
        double avg = sum / pairs;
        result.avg.push_back(avg);
        result.max.push_back(best);
        if (avg > result.max_avg) {
            result.max_avg = avg;
            result.max_avg_q = q;
        }
    }
    return result;
}

}  // namespace dqsd
