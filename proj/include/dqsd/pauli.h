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

#ifndef DQSD_PAULI_H
#define DQSD_PAULI_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dqsd/operator.h"

namespace dqsd {

/// Pauli labels in the protocol's ordering: 1 is sigma_z, 2 is sigma_x, 3 is sigma_y.
///
/// This is deliberately not the textbook (x, y, z) order. Measurement inputs
/// x = 1, 2, 3 of the auxiliary parties refer to these labels.
enum class Pauli : std::uint8_t {
    I = 0,
    Z = 1,
    X = 2,
    Y = 3,
};

/// Throws ArgumentError unless 0 <= index <= 3.
Pauli pauli_from_index(int index);
inline int index_of(Pauli p) { return static_cast<int>(p); }
char pauli_char(Pauli p);

Operator pauli(Pauli p);

/// (I + a * sigma_axis) / 2 for outcome a in {+1, -1} and a non-identity axis.
Operator projector(int outcome, Pauli axis);
/// Same, with the axis given as an input label 1..3.
Operator projector(int outcome, int axis);

/// |Phi^b><Phi^b| for the Bell basis
///   Phi^0 = (|00> + |11>)/sqrt2, Phi^1 = (|00> - |11>)/sqrt2,
///   Phi^2 = (|01> + |10>)/sqrt2, Phi^3 = (|01> - |10>)/sqrt2.
DensityMatrix bell_state(int b);

/// Correction unitary tied to Bell outcome b: I, sigma_z, sigma_x, sigma_z sigma_x.
Operator bell_correction(int b);

/// Single-qubit pure state cos(omega)|0> + e^{i theta} sin(omega)|1>.
struct PureStateParams {
    double omega;  ///< in [0, pi/2]
    double theta;  ///< in [0, 2 pi)

    /// Throws ArgumentError when the angles leave their ranges.
    DensityMatrix state() const;
    /// Recovers (omega, theta) from a pure qubit state. Throws ValidationError for mixed input.
    static PureStateParams from_state(const DensityMatrix &rho);
};

/// Coefficients S_{j1..jN} = Tr[(sigma_j1 x ... x sigma_jN) rho], stored lexicographically
/// over index tuples (j1 is the most significant base-4 digit).
class PauliCoefficients {
   public:
    PauliCoefficients(std::size_t num_qubits, std::vector<double> values);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }

    double at(std::span<const int> indices) const;
    double at_flat(std::size_t flat) const { return values_.at(flat); }

    static std::size_t flat_index(std::span<const int> indices);
    static std::vector<int> index_tuple(std::size_t flat, std::size_t num_qubits);

   private:
    std::size_t num_qubits_;
    std::vector<double> values_;
};

/// Tr[(sigma_{labels[0]} x ... x sigma_{labels[N-1]}) op], complex in general.
Complex pauli_string_expectation(const Operator &op, std::span<const int> labels);

/// Operator sigma_{labels[0]} x ... x sigma_{labels[N-1]}.
Operator pauli_string(std::span<const int> labels);

PauliCoefficients pauli_decompose(const DensityMatrix &rho, std::size_t max_qubits = 6);
DensityMatrix pauli_reconstruct(const PauliCoefficients &coefficients);

std::string format_index_tuple(std::span<const int> indices);

}  // namespace dqsd

#endif  // DQSD_PAULI_H
