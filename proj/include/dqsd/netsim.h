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

#ifndef DQSD_NETSIM_H
#define DQSD_NETSIM_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dqsd/correlations.h"
#include "dqsd/operator.h"

namespace dqsd {

/// Everything inside the black boxes of one network cell.
///
/// Qubit order of the full cell is A, B0, B, C. Alice measures A, Bob's single-qubit
/// settings act on B0 only, Bob's diamond setting acts on B0 B, Charlie measures C.
/// During discrimination rounds the B qubit of aux_bc is replaced by the target state;
/// the strategy itself is reused unchanged.
struct DeviceStrategy {
    std::string label;
    DensityMatrix aux_ab0;
    DensityMatrix aux_bc;
    std::vector<Povm> alice;       ///< inputs 1, 2, 3; 2x2
    std::vector<Povm> bob_single;  ///< inputs 1..6; 2x2 on B0
    Povm bob_bell;                 ///< input kBellInput; 4x4 on B0 B, outcomes 0..3
    std::vector<Povm> charlie;     ///< inputs 1, 2; 2x2

    /// Throws ValidationError / ArgumentError if any state or measurement is malformed.
    void validate(double tol = kTolerance) const;
};

/// Phi^0 on both links, A_x = sigma_x, B_y = (sigma_j +- sigma_k)/sqrt2, C_z = (sigma_1 +- sigma_2)/sqrt2,
/// and the Bell-basis measurement for the diamond input.
///
/// Bob's labels: y = 1, 2 use (j,k) = (1,2); y = 3, 4 use (1,3); y = 5, 6 use (2,3); odd y takes
/// the + sign. This is the labelling under which I(1,2;1,2) + I(1,3;4,3) + I(2,3;6,5) reaches 6 sqrt2.
DeviceStrategy honest_strategy();

/// Entrywise complex conjugate of every state and operator of the honest strategy.
/// Indistinguishable from honest on all certification statistics.
DeviceStrategy conjugated_strategy();

/// Honest measurements with both links replaced by p Phi^0 + (1 - p) I/4.
DeviceStrategy werner_strategy(double visibility);

/// Fixed outputs for every input. Outcomes are +-1 except bob_bell in 0..3.
struct ClassicalAssignment {
    std::array<int, 3> alice{1, 1, 1};
    std::array<int, 6> bob{1, 1, 1, 1, 1, 1};
    int bob_bell = 0;
    std::array<int, 2> charlie{1, 1};
};

/// Deterministic devices: each setting is the POVM {I on the assigned outcome, 0 elsewhere}.
DeviceStrategy classical_strategy(const ClassicalAssignment &assignment);

/// Full certification table p1(a, b, c | x, y, z): parties Alice, Bob, Charlie with Bob
/// inputs 1..6 and kBellInput.
CorrelationTable p1_exact(const DeviceStrategy &strategy);

/// Discrimination table p2(a, b | x, diamond) with the target on qubit B.
CorrelationTable p2_exact(const DeviceStrategy &strategy, const DensityMatrix &target);

struct NetworkOptions {
    /// Largest number of cells (target qubits) a network may have.
    std::size_t max_cells = 3;
};

/// N copies of the single-qubit cell sharing one N-qubit target on B_1..B_N.
struct NQubitNetwork {
    std::vector<DeviceStrategy> cells;
    DensityMatrix target;

    std::size_t num_cells() const { return cells.size(); }
    /// Throws ResourceError above the cap and ArgumentError on a size mismatch.
    void validate(const NetworkOptions &options = {}) const;
};

NQubitNetwork honest_network(const DensityMatrix &target);

/// The operator on B with Tr[F rho_B] = p2(a, b | x, diamond) for this cell.
Operator effective_discrimination_operator(const DeviceStrategy &cell, int x, int a, int b);

/// p2(a_1..a_N, b_1..b_N | x_1..x_N, diamond..diamond). Parties are A_1..A_N then B_1..B_N.
/// Each entry is Tr[(F_1 x ... x F_N) rho] with F_k the effective operator of cell k.
CorrelationTable p2_exact_nqubit(const NQubitNetwork &network, const NetworkOptions &options = {});

/// p1 of an N-cell network. The cells share no state, so the joint table is the product
/// of the per-cell tables and is kept in that factored form.
class ProductCorrelation {
   public:
    explicit ProductCorrelation(std::vector<CorrelationTable> cells);

    std::size_t num_cells() const { return cells_.size(); }
    const CorrelationTable &cell(std::size_t k) const { return cells_.at(k); }

    /// Joint probability; inputs and outcomes are given per cell as (Alice, Bob, Charlie) triples.
    double prob(std::span<const std::array<int, 3>> inputs, std::span<const std::array<int, 3>> outcomes) const;

   private:
    std::vector<CorrelationTable> cells_;
};

ProductCorrelation p1_exact_nqubit(const NQubitNetwork &network, const NetworkOptions &options = {});

/// Finite-shot counts for every input tuple of a TableShape.
struct CountsTable {
    TableShape shape;
    std::vector<std::uint64_t> counts;          ///< laid out like CorrelationTable values
    std::vector<std::uint64_t> shots_per_input;
    std::uint64_t seed = 0;

    std::uint64_t count(std::size_t input, std::size_t outcome) const { return counts[shape.offset(input) + outcome]; }
    std::span<const std::uint64_t> distribution(std::size_t input) const;
    /// Throws ValidationError if any input's counts do not add up to its shots.
    void validate() const;
};

/// Seed for one input tuple, derived with SplitMix64 from the run seed and the input index.
std::uint64_t derive_input_seed(std::uint64_t seed, std::size_t input_index);

/// Multinomial sampling, the same number of shots for every input tuple.
///
/// Each input tuple draws from its own std::mt19937_64 seeded by derive_input_seed, so
/// the result does not depend on the order in which inputs are sampled.
CountsTable sample(const CorrelationTable &table, std::uint64_t shots_per_input, std::uint64_t seed);

/// Same, with an explicit shot allocation per input tuple.
CountsTable sample(const CorrelationTable &table, std::span<const std::uint64_t> shots_per_input, std::uint64_t seed);

/// counts / shots. Inputs with zero shots get an all-zero row.
CorrelationTable estimate(const CountsTable &counts);

}  // namespace dqsd

#endif  // DQSD_NETSIM_H
