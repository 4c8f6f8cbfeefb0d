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

#ifndef DQSD_CORRELATIONS_H
#define DQSD_CORRELATIONS_H

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqsd/operator.h"

namespace dqsd {

/// Input label of Bob's two-qubit Bell-type measurement (the diamond input).
inline constexpr int kBellInput = 0;

/// Inputs and per-input outcome labels of one party.
struct PartyAlphabet {
    std::string name;
    std::vector<int> inputs;
    /// outcomes[i] lists the outcome labels available for inputs[i].
    std::vector<std::vector<int>> outcomes;

    bool operator==(const PartyAlphabet &) const = default;
};

/// Index arithmetic shared by probability tables and count tables.
///
/// Input tuples are enumerated lexicographically by per-party input position (the
/// first party varies slowest). Within an input tuple, outcome tuples are enumerated
/// the same way over outcome positions.
class TableShape {
   public:
    explicit TableShape(std::vector<PartyAlphabet> parties);

    std::size_t num_parties() const { return parties_.size(); }
    const PartyAlphabet &party(std::size_t k) const { return parties_.at(k); }
    std::span<const PartyAlphabet> parties() const { return parties_; }

    std::size_t num_inputs() const { return num_inputs_; }
    std::vector<int> input_tuple(std::size_t input) const;
    std::optional<std::size_t> find_input(std::span<const int> labels) const;
    /// Throws ArgumentError if the tuple is not part of the table.
    std::size_t input_index(std::span<const int> labels) const;

    std::size_t num_outcomes(std::size_t input) const;
    std::vector<int> outcome_tuple(std::size_t input, std::size_t outcome) const;
    /// Throws ArgumentError if the outcome tuple is not valid for this input.
    std::size_t outcome_index(std::size_t input, std::span<const int> labels) const;

    /// Position of (input, 0) in a flat array of size total_size().
    std::size_t offset(std::size_t input) const { return offsets_.at(input); }
    std::size_t total_size() const { return offsets_.back(); }

    bool operator==(const TableShape &other) const { return parties_ == other.parties_; }

   private:
    std::vector<std::size_t> input_positions(std::size_t input) const;

    std::vector<PartyAlphabet> parties_;
    std::size_t num_inputs_ = 1;
    std::vector<std::size_t> offsets_;
};

/// p(outcomes | inputs) for every input and outcome tuple of a TableShape.
class CorrelationTable {
   public:
    explicit CorrelationTable(TableShape shape);

    const TableShape &shape() const { return shape_; }

    double &at(std::size_t input, std::size_t outcome) { return values_[shape_.offset(input) + outcome]; }
    double at(std::size_t input, std::size_t outcome) const { return values_[shape_.offset(input) + outcome]; }
    double prob(std::span<const int> inputs, std::span<const int> outcomes) const;

    std::span<double> distribution(std::size_t input);
    std::span<const double> distribution(std::size_t input) const;

    /// Throws ValidationError unless every entry is in [0, 1] and every conditional sums to 1.
    void validate(double tol = kTolerance) const;
    bool approx_equal(const CorrelationTable &other, double tol = kTolerance) const;

   private:
    TableShape shape_;
    std::vector<double> values_;
};

/// One measurement setting of one party: an input label and its POVM elements.
struct Povm {
    int input = 0;
    std::vector<int> outcomes;
    std::vector<Operator> elements;

    std::size_t dim() const { return elements.empty() ? 0 : elements.front().dim(); }
    /// Throws ValidationError unless every element is PSD and they sum to the identity.
    void validate(double tol = kTolerance) const;
    Povm conjugate() const;
};

/// Two-outcome projective measurement {+1: P, -1: I - P}.
Povm binary_povm(int input, const Operator &plus_projector);
/// Projective measurement of a +-1 valued observable.
Povm observable_povm(int input, const Operator &observable);

struct PartyMeasurements {
    std::string name;
    std::vector<Povm> settings;
};

/// Tr[(E_1 x ... x E_k) state] for every combination. Party k acts on the k-th block of
/// qubits, with block sizes taken from the POVM dimensions.
CorrelationTable exact_correlation(const DensityMatrix &state, std::span<const PartyMeasurements> parties);

struct PartyInput {
    std::size_t party;
    int input;
};

/// sum over outcomes of (product of the named parties' +-1 outcomes) * p.
///
/// Parties that are not named are marginalized; if they have several inputs, the
/// result is averaged uniformly over every matching input tuple. Throws ArgumentError
/// if no input tuple matches or a named party's outcomes are not {+1, -1}.
double correlator(const CorrelationTable &table, std::span<const PartyInput> fixed);

/// <A_x B_y> between parties 0 and 1.
double correlator(const CorrelationTable &table, int x, int y);

struct PartyPair {
    std::size_t first = 0;
    std::size_t second = 1;
};

/// <A_m B_p> + <A_m B_q> + <A_n B_p> - <A_n B_q>.
double chsh(const CorrelationTable &table, int m, int n, int p, int q, PartyPair parties = {});

/// I(1,2;1,2) + I(1,3;4,3) + I(2,3;6,5). Classical bound 6, quantum maximum 6 sqrt2.
double three_chsh(const CorrelationTable &table, PartyPair parties = {});

struct GammaParties {
    std::size_t alice = 0;
    std::size_t bob = 1;
    std::size_t charlie = 2;
};

/// <A_x C_z> on the statistics conditioned on Bob's diamond outcome b:
/// sum_{a,c} a c p(a, b, c | x, diamond, z) / p(b | x, diamond, z).
/// Throws ConditioningError when p(b | x, diamond, z) is zero.
double conditional_correlator(const CorrelationTable &table, int x, int z, int b, GammaParties parties = {});

/// The CHSH form number `form` evaluated on statistics conditioned on outcome b.
/// Forms 0 and 1 are the two displayed expressions; form 2 is -form 1 and form 3 is -form 0.
double gamma_chsh_form(const CorrelationTable &table, int form, int b, GammaParties parties = {});

/// The b-th form on the b-conditioned statistics. Equals 2 sqrt2 for every b on the
/// reference Bell measurement.
double gamma_chsh(const CorrelationTable &table, int b, GammaParties parties = {});
std::array<double, 4> gamma_chsh_all(const CorrelationTable &table, GammaParties parties = {});

}  // namespace dqsd

#endif  // DQSD_CORRELATIONS_H
