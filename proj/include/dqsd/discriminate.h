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

#ifndef DQSD_DISCRIMINATE_H
#define DQSD_DISCRIMINATE_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqsd/certify.h"
#include "dqsd/correlations.h"
#include "dqsd/netsim.h"
#include "dqsd/pauli.h"

namespace dqsd {

enum class DecisionMode { DI, MDI };
const char *to_string(DecisionMode mode);

/// P2(a | x) = Tr[(pi_{a_1|x_1} x ... x pi_{a_N|x_N}) rho] as recovered from discrimination rounds.
///
/// Input tuples x in {1,2,3}^N are indexed in base 3 (x_1 most significant). Outcome
/// tuples are indexed in base 2 with digit 0 for a = +1 and 1 for a = -1.
class P2Table {
   public:
    /// `values` holds 2^N entries per covered input; `covered` marks which of the 3^N
    /// inputs carry data. `shots` is empty for exact tables, else one entry per input.
    P2Table(std::size_t num_qubits, std::vector<double> values, std::vector<bool> covered,
            std::vector<std::uint64_t> shots = {});

    std::size_t num_qubits() const { return num_qubits_; }
    bool is_exact() const { return shots_.empty(); }
    bool covers(std::span<const int> x) const;

    double prob(std::span<const int> x, std::span<const int> a) const;
    /// Throws ArgumentError for inputs the table does not cover.
    std::span<const double> distribution(std::span<const int> x) const;
    std::optional<std::uint64_t> shots(std::span<const int> x) const;

    /// Single-qubit shorthand for prob({x}, {a}).
    double single(int a, int x) const;

    static std::size_t input_index(std::span<const int> x);
    static std::vector<int> input_tuple(std::size_t index, std::size_t num_qubits);

   private:
    std::size_t num_qubits_;
    std::vector<double> values_;
    std::vector<bool> covered_;
    std::vector<std::uint64_t> shots_;
};

/// Outcome relabelling that maps (a, b) back to the b = 0 category:
/// +1 when b = 0 or b = x, -1 otherwise.
int p2_category_sign(int x, int b);

/// Aggregates all four Bell outcomes into P2(a | x) using p2_category_sign on every qubit.
/// The table must have parties A_1..A_N then B_1..B_N as produced by p2_exact or p2_exact_nqubit.
P2Table extract_p2(const CorrelationTable &p2);
P2Table extract_p2(const CountsTable &p2_counts);

/// (Delta_1, Delta_2, Delta_3) from the closed forms in (omega, theta).
std::array<double, 3> delta(const PureStateParams &s1, const PureStateParams &s2);
/// Same for pure density matrices. Throws ValidationError for mixed states.
std::array<double, 3> delta(const DensityMatrix &rho1, const DensityMatrix &rho2);
/// sum_a |Tr[pi_{a|x} (rho1 - rho2)]|, the measurement-induced route to the same numbers.
std::array<double, 3> delta_operational(const DensityMatrix &rho1, const DensityMatrix &rho2);
/// max_x Delta_x / 2.
double distance(const DensityMatrix &rho1, const DensityMatrix &rho2);

struct MeasurementChoice {
    int input;
    DecisionMode mode;
};

/// Largest of Delta_1, Delta_2 when it exceeds `threshold` (ties go to 1), else input 3 in MDI mode.
/// Throws DegenerateEnsembleError for identical states.
MeasurementChoice choose_measurement(const DensityMatrix &rho1, const DensityMatrix &rho2,
                                     double threshold = kTolerance);

struct EnsembleMember {
    double prior;
    DensityMatrix state;
};
using Ensemble = std::vector<EnsembleMember>;

/// At least two pure members of `num_qubits` qubits, priors in [0, 1] summing to 1.
void validate_ensemble(const Ensemble &ensemble, std::size_t num_qubits);

struct DiscriminationDecision {
    std::size_t chosen_index = 0;
    /// Input tuples (single qubit: {x}) or Pauli index tuples that entered the decision.
    std::vector<std::vector<int>> used_inputs;
    DecisionMode mode = DecisionMode::DI;
    /// Distance to the runner-up minus distance to the chosen member.
    double margin = 0;
    /// Largest estimated standard error among the statistics used; 0 for exact tables.
    double standard_error = 0;
};

struct DecisionOptions {
    double threshold = kTolerance;
    /// Refuse when margin < refuse_sigmas * standard_error.
    double refuse_sigmas = 4.0;
};

/// Nearest-prediction decision over the union of the pairwise best inputs.
///
/// Throws UncertifiedDevicesError if `certification` did not pass, MdiRequiredError if a
/// pair needs the third Pauli correlation and `probe` is empty, and InconclusiveError when
/// the margin is below the statistical threshold. A probe with sign -1 swaps the outcomes
/// of input 3 before comparing.
DiscriminationDecision discriminate_single(const P2Table &p2, const Ensemble &ensemble,
                                           const CertificationReport &certification,
                                           const std::optional<MdiProbeResult> &probe,
                                           const DecisionOptions &options = {});

struct IndexChoice {
    std::vector<int> indices;
    DecisionMode mode;
};

/// Index tuple m maximizing |S_m(phi_j) - S_m(phi_k)|.
///
/// DI mode searches {1,2}^N first, then tuples over {0,1,2} (identity factors are read off
/// marginals of the same data). Only if those cannot separate the states (a conjugate pair)
/// does it search all 4^N tuples, which then include a 3, in MDI mode. Ties go to the
/// lexicographically smallest tuple.
IndexChoice select_index_nqubit(const DensityMatrix &phi_j, const DensityMatrix &phi_k,
                                double threshold = kTolerance);

/// Measurement input used to read coefficient index tuple m: x_k = m_k, or 1 where m_k = 0.
std::vector<int> input_for_indices(std::span<const int> indices);

/// S_m = sum_a prod_{k : m_k != 0} a_k * P2(a | x(m)).
double coefficient_from_correlations(const P2Table &p2, std::span<const int> indices);

/// (1/2) max over x in {1,2,3}^N of sum_a |Tr[(x_k pi_{a_k|x_k}) (phi_j - phi_k)]|.
double distance_nqubit(const DensityMatrix &phi_j, const DensityMatrix &phi_k);

/// N-qubit analogue of discriminate_single, deciding on Pauli coefficients. Needs one
/// certification report per cell, all passed, and a probe for every cell whose qubit is
/// measured with index 3 in a chosen tuple.
DiscriminationDecision discriminate_nqubit(const P2Table &p2, const Ensemble &ensemble,
                                           std::span<const CertificationReport> certifications,
                                           std::span<const std::optional<MdiProbeResult>> probes,
                                           const DecisionOptions &options = {});

}  // namespace dqsd

#endif  // DQSD_DISCRIMINATE_H
