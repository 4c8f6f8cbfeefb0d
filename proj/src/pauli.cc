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

#include "dqsd/pauli.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dqsd/errors.h"

namespace dqsd {

namespace {

constexpr Complex kI{0.0, 1.0};

// Action of one Pauli on a basis bit: sigma|bit> = phase |out_bit>.
struct BitAction {
    int out_bit;
    Complex phase;
};

BitAction act(int label, int bit) {
    switch (label) {
        case 0:
            return {bit, 1.0};
        case 1:
            return {bit, bit ? -1.0 : 1.0};
        case 2:
            return {1 - bit, 1.0};
        case 3:
            return {1 - bit, bit ? -kI : kI};
    }
    throw ArgumentError("Pauli label must be in 0..3, got " + std::to_string(label));
}

// For basis column c, the row r and phase with P|c> = phase|r>.
void string_action(std::span<const int> labels, std::size_t col, std::size_t &row, Complex &phase) {
    std::size_t n = labels.size();
    row = 0;
    phase = 1.0;
    for (std::size_t q = 0; q < n; q++) {
        int bit = static_cast<int>((col >> (n - 1 - q)) & 1);
        BitAction a = act(labels[q], bit);
        phase *= a.phase;
        row |= static_cast<std::size_t>(a.out_bit) << (n - 1 - q);
    }
}

}  // namespace

Pauli pauli_from_index(int index) {
    if (index < 0 || index > 3) {
        throw ArgumentError("Pauli label must be in 0..3, got " + std::to_string(index));
    }
    return static_cast<Pauli>(index);
}

char pauli_char(Pauli p) {
    return "IZXY"[index_of(p)];
}

Operator pauli(Pauli p) {
    switch (p) {
        case Pauli::I:
            return Operator::identity(2);
        case Pauli::Z:
            return Operator{{1, 0}, {0, -1}};
        case Pauli::X:
            return Operator{{0, 1}, {1, 0}};
        case Pauli::Y:
            return Operator{{0, -kI}, {kI, 0}};
    }
    throw ArgumentError("unknown Pauli label");
}

Operator projector(int outcome, Pauli axis) {
    if (outcome != 1 && outcome != -1) {
        throw ArgumentError("projector outcome must be +1 or -1, got " + std::to_string(outcome));
    }
    if (axis == Pauli::I) {
        throw ArgumentError("projector axis must be one of 1, 2, 3");
    }
    Operator result = Operator::identity(2) + static_cast<double>(outcome) * pauli(axis);
    result *= 0.5;
    return result;
}

Operator projector(int outcome, int axis) {
    if (axis < 1 || axis > 3) {
        throw ArgumentError("projector axis must be one of 1, 2, 3, got " + std::to_string(axis));
    }
    return projector(outcome, static_cast<Pauli>(axis));
}

DensityMatrix bell_state(int b) {
    const double h = std::numbers::sqrt2 / 2;
    std::array<Complex, 4> ket{};
    switch (b) {
        case 0:
            ket = {h, 0, 0, h};
            break;
        case 1:
            ket = {h, 0, 0, -h};
            break;
        case 2:
            ket = {0, h, h, 0};
            break;
        case 3:
            ket = {0, h, -h, 0};
            break;
        default:
            throw ArgumentError("Bell index must be in 0..3, got " + std::to_string(b));
    }
    return DensityMatrix::from_ket(ket);
}

Operator bell_correction(int b) {
    switch (b) {
        case 0:
            return Operator::identity(2);
        case 1:
            return pauli(Pauli::Z);
        case 2:
            return pauli(Pauli::X);
        case 3:
            return pauli(Pauli::Z) * pauli(Pauli::X);
    }
    throw ArgumentError("Bell index must be in 0..3, got " + std::to_string(b));
}

DensityMatrix PureStateParams::state() const {
    if (!(omega >= 0 && omega <= std::numbers::pi / 2)) {
        throw ArgumentError("omega must lie in [0, pi/2]");
    }
    if (!(theta >= 0 && theta < 2 * std::numbers::pi)) {
        throw ArgumentError("theta must lie in [0, 2 pi)");
    }
    std::array<Complex, 2> ket{std::cos(omega), std::polar(std::sin(omega), theta)};
    return DensityMatrix::from_ket(ket);
}

PureStateParams PureStateParams::from_state(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw ArgumentError("expected a single-qubit state");
    }
    if (!rho.is_pure()) {
        throw ValidationError("expected a pure state");
    }
    // rho_00 = cos^2 w, rho_10 = e^{i theta} sin w cos w.
    double c2 = std::clamp(rho.op()(0, 0).real(), 0.0, 1.0);
    double omega = std::acos(std::sqrt(c2));
    Complex off = rho.op()(1, 0);
    double theta = 0;
    if (std::abs(off) > 1e-12) {
        theta = std::arg(off);
        if (theta < 0) {
            theta += 2 * std::numbers::pi;
        }
        if (theta >= 2 * std::numbers::pi) {
            theta = 0;
        }
    }
    return {omega, theta};
}

PauliCoefficients::PauliCoefficients(std::size_t num_qubits, std::vector<double> values)
    : num_qubits_(num_qubits), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << (2 * num_qubits))) {
        throw ArgumentError("need 4^N Pauli coefficients");
    }
}

double PauliCoefficients::at(std::span<const int> indices) const {
    if (indices.size() != num_qubits_) {
        throw ArgumentError("index tuple length does not match qubit count");
    }
    return values_[flat_index(indices)];
}

std::size_t PauliCoefficients::flat_index(std::span<const int> indices) {
    std::size_t flat = 0;
    for (int j : indices) {
        if (j < 0 || j > 3) {
            throw ArgumentError("Pauli index must be in 0..3");
        }
        flat = flat * 4 + static_cast<std::size_t>(j);
    }
    return flat;
}

std::vector<int> PauliCoefficients::index_tuple(std::size_t flat, std::size_t num_qubits) {
    std::vector<int> out(num_qubits);
    for (std::size_t k = num_qubits; k-- > 0;) {
        out[k] = static_cast<int>(flat % 4);
        flat /= 4;
    }
    return out;
}

Complex pauli_string_expectation(const Operator &op, std::span<const int> labels) {
    if (op.num_qubits() != labels.size()) {
        throw ArgumentError("Pauli string length does not match operator size");
    }
    // Tr[P op] = sum_c P(r(c), c) op(c, r(c)).
    Complex sum{};
    for (std::size_t c = 0; c < op.dim(); c++) {
        std::size_t r;
        Complex phase;
        string_action(labels, c, r, phase);
        sum += phase * op(c, r);
    }
    return sum;
}

Operator pauli_string(std::span<const int> labels) {
    Operator result(std::size_t{1} << labels.size());
    for (std::size_t c = 0; c < result.dim(); c++) {
        std::size_t r;
        Complex phase;
        string_action(labels, c, r, phase);
        result(r, c) = phase;
    }
    return result;
}

PauliCoefficients pauli_decompose(const DensityMatrix &rho, std::size_t max_qubits) {
    std::size_t n = rho.num_qubits();
    if (n > max_qubits) {
        throw ResourceError("pauli_decompose capped at " + std::to_string(max_qubits) + " qubits");
    }
    std::size_t count = std::size_t{1} << (2 * n);
    std::vector<double> values(count);
    for (std::size_t flat = 0; flat < count; flat++) {
        auto labels = PauliCoefficients::index_tuple(flat, n);
        values[flat] = pauli_string_expectation(rho.op(), labels).real();
    }
    return PauliCoefficients(n, std::move(values));
}

DensityMatrix pauli_reconstruct(const PauliCoefficients &coefficients) {
    std::size_t n = coefficients.num_qubits();
    std::size_t dim = std::size_t{1} << n;
    Operator op(dim);
    double scale = 1.0 / static_cast<double>(dim);
    for (std::size_t flat = 0; flat < coefficients.size(); flat++) {
        double s = coefficients.at_flat(flat);
        if (s == 0) {
            continue;
        }
        auto labels = PauliCoefficients::index_tuple(flat, n);
        for (std::size_t c = 0; c < dim; c++) {
            std::size_t r;
            Complex phase;
            string_action(labels, c, r, phase);
            op(r, c) += s * scale * phase;
        }
    }
    return DensityMatrix(std::move(op));
}

std::string format_index_tuple(std::span<const int> indices) {
    std::string out = "(";
    for (std::size_t k = 0; k < indices.size(); k++) {
        if (k) {
            out += ",";
        }
        out += std::to_string(indices[k]);
    }
    return out + ")";
}

}  // namespace dqsd
