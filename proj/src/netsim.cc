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

#include "dqsd/netsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dqsd/errors.h"
#include "dqsd/pauli.h"

namespace dqsd {

namespace {

Operator scaled_sum(Pauli j, Pauli k, double sign) {
    Operator out = pauli(j) + sign * pauli(k);
    out *= 1 / std::numbers::sqrt2;
    return out;
}

Povm bell_measurement() {
    Povm povm{kBellInput, {0, 1, 2, 3}, {}};
    for (int b = 0; b < 4; b++) {
        povm.elements.push_back(bell_state(b).op());
    }
    return povm;
}

Povm deterministic_povm(int input, std::vector<int> outcomes, int chosen, std::size_t dim) {
    if (std::find(outcomes.begin(), outcomes.end(), chosen) == outcomes.end()) {
        throw ArgumentError("assigned outcome " + std::to_string(chosen) + " is not allowed for input " +
                            std::to_string(input));
    }
    Povm povm{input, std::move(outcomes), {}};
    for (int o : povm.outcomes) {
        povm.elements.push_back(o == chosen ? Operator::identity(dim) : Operator(dim));
    }
    return povm;
}

void check_inputs(const std::vector<Povm> &settings, std::span<const int> expected, std::size_t dim,
                  const std::string &who, double tol) {
    if (settings.size() != expected.size()) {
        throw ArgumentError(who + " needs " + std::to_string(expected.size()) + " settings");
    }
    for (std::size_t k = 0; k < settings.size(); k++) {
        if (settings[k].input != expected[k]) {
            throw ArgumentError(who + " setting " + std::to_string(k) + " has the wrong input label");
        }
        if (settings[k].dim() != dim) {
            throw ArgumentError(who + " setting " + std::to_string(settings[k].input) + " has the wrong dimension");
        }
        settings[k].validate(tol);
    }
}

Povm extend_with_identity(const Povm &povm, std::size_t dim) {
    Povm out = povm;
    for (auto &e : out.elements) {
        e = kron(e, Operator::identity(dim));
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

void DeviceStrategy::validate(double tol) const {
    if (aux_ab0.dim() != 4 || aux_bc.dim() != 4) {
        throw ArgumentError("auxiliary states must be two-qubit states");
    }
    static constexpr int kAlice[] = {1, 2, 3};
    static constexpr int kBob[] = {1, 2, 3, 4, 5, 6};
    static constexpr int kCharlie[] = {1, 2};
    check_inputs(alice, kAlice, 2, "Alice", tol);
    check_inputs(bob_single, kBob, 2, "Bob", tol);
    check_inputs(charlie, kCharlie, 2, "Charlie", tol);
    if (bob_bell.input != kBellInput || bob_bell.dim() != 4 || bob_bell.outcomes != std::vector<int>{0, 1, 2, 3}) {
        throw ArgumentError("Bob's diamond setting must be a 4-outcome two-qubit measurement");
    }
    bob_bell.validate(tol);
}

DeviceStrategy honest_strategy() {
    DeviceStrategy s{
        "honest", bell_state(0), bell_state(0), {}, {}, bell_measurement(), {},
    };
    for (int x = 1; x <= 3; x++) {
        s.alice.push_back(observable_povm(x, pauli(static_cast<Pauli>(x))));
    }
    const std::array<std::pair<Pauli, Pauli>, 3> pairs{{{Pauli::Z, Pauli::X}, {Pauli::Z, Pauli::Y}, {Pauli::X, Pauli::Y}}};
    int y = 1;
    for (const auto &[j, k] : pairs) {
        s.bob_single.push_back(observable_povm(y++, scaled_sum(j, k, +1)));
        s.bob_single.push_back(observable_povm(y++, scaled_sum(j, k, -1)));
    }
    s.charlie.push_back(observable_povm(1, scaled_sum(Pauli::Z, Pauli::X, +1)));
    s.charlie.push_back(observable_povm(2, scaled_sum(Pauli::Z, Pauli::X, -1)));
    return s;
}

DeviceStrategy conjugated_strategy() {
    DeviceStrategy h = honest_strategy();
    DeviceStrategy s{
        "conjugated",
        conjugate_in_computational_basis(h.aux_ab0),
        conjugate_in_computational_basis(h.aux_bc),
        {},
        {},
        h.bob_bell.conjugate(),
        {},
    };
    for (const auto &p : h.alice) {
        s.alice.push_back(p.conjugate());
    }
    for (const auto &p : h.bob_single) {
        s.bob_single.push_back(p.conjugate());
    }
    for (const auto &p : h.charlie) {
        s.charlie.push_back(p.conjugate());
    }
    return s;
}

DeviceStrategy werner_strategy(double visibility) {
    if (!(visibility >= 0 && visibility <= 1)) {
        throw ArgumentError("Werner visibility must lie in [0, 1]");
    }
    Operator mixed = visibility * bell_state(0).op();
    Operator noise = Operator::identity(4);
    noise *= (1 - visibility) / 4;
    mixed += noise;
    DeviceStrategy s = honest_strategy();
    s.label = "werner(" + std::to_string(visibility) + ")";
    s.aux_ab0 = DensityMatrix(mixed);
    s.aux_bc = DensityMatrix(mixed);
    return s;
}

DeviceStrategy classical_strategy(const ClassicalAssignment &assignment) {
    std::array<Complex, 4> zero_zero{1, 0, 0, 0};
    DeviceStrategy s{
        "classical",
        DensityMatrix::from_ket(zero_zero),
        DensityMatrix::from_ket(zero_zero),
        {},
        {},
        deterministic_povm(kBellInput, {0, 1, 2, 3}, assignment.bob_bell, 4),
        {},
    };
    for (int x = 1; x <= 3; x++) {
        s.alice.push_back(deterministic_povm(x, {1, -1}, assignment.alice[x - 1], 2));
    }
    for (int y = 1; y <= 6; y++) {
        s.bob_single.push_back(deterministic_povm(y, {1, -1}, assignment.bob[y - 1], 2));
    }
    for (int z = 1; z <= 2; z++) {
        s.charlie.push_back(deterministic_povm(z, {1, -1}, assignment.charlie[z - 1], 2));
    }
    return s;
}

CorrelationTable p1_exact(const DeviceStrategy &strategy) {
    strategy.validate();
    std::vector<PartyMeasurements> parties(3);
    parties[0] = {"A", strategy.alice};
    parties[1].name = "B";
    for (const auto &p : strategy.bob_single) {
        parties[1].settings.push_back(extend_with_identity(p, 2));
    }
    parties[1].settings.push_back(strategy.bob_bell);
    parties[2] = {"C", strategy.charlie};
    return exact_correlation(kron(strategy.aux_ab0, strategy.aux_bc), parties);
}

CorrelationTable p2_exact(const DeviceStrategy &strategy, const DensityMatrix &target) {
    strategy.validate();
    if (target.num_qubits() != 1) {
        throw ArgumentError("p2_exact expects a single-qubit target; use p2_exact_nqubit");
    }
    std::vector<PartyMeasurements> parties{{"A", strategy.alice}, {"B", {strategy.bob_bell}}};
    return exact_correlation(kron(strategy.aux_ab0, target), parties);
}

void NQubitNetwork::validate(const NetworkOptions &options) const {
    if (cells.empty()) {
        throw ArgumentError("a network needs at least one cell");
    }
    if (cells.size() > options.max_cells) {
        throw ResourceError("network has " + std::to_string(cells.size()) + " cells, cap is " +
                            std::to_string(options.max_cells));
    }
    if (target.num_qubits() != cells.size()) {
        throw ArgumentError("target has " + std::to_string(target.num_qubits()) + " qubits but the network has " +
                            std::to_string(cells.size()) + " cells");
    }
    for (const auto &c : cells) {
        c.validate();
    }
}

NQubitNetwork honest_network(const DensityMatrix &target) {
    return NQubitNetwork{std::vector<DeviceStrategy>(target.num_qubits(), honest_strategy()), target};
}

Operator effective_discrimination_operator(const DeviceStrategy &cell, int x, int a, int b) {
    auto setting = std::find_if(cell.alice.begin(), cell.alice.end(), [x](const Povm &p) { return p.input == x; });
    if (setting == cell.alice.end()) {
        throw ArgumentError("Alice has no input " + std::to_string(x));
    }
    auto ai = std::find(setting->outcomes.begin(), setting->outcomes.end(), a);
    auto bi = std::find(cell.bob_bell.outcomes.begin(), cell.bob_bell.outcomes.end(), b);
    if (ai == setting->outcomes.end() || bi == cell.bob_bell.outcomes.end()) {
        throw ArgumentError("invalid outcome pair for the discrimination round");
    }
    const Operator &ma = setting->elements[static_cast<std::size_t>(ai - setting->outcomes.begin())];
    const Operator &mb = cell.bob_bell.elements[static_cast<std::size_t>(bi - cell.bob_bell.outcomes.begin())];
    // Tr[(M_a x M_b)(tau x rho)] = Tr_B[ Tr_{A B0}[(M_a x M_b)(tau x I)] rho ].
    Operator joint = kron(ma, mb) * kron(cell.aux_ab0.op(), Operator::identity(2));
    static constexpr std::size_t kKeepB[] = {2};
    return partial_trace(joint, kKeepB);
}

CorrelationTable p2_exact_nqubit(const NQubitNetwork &network, const NetworkOptions &options) {
    network.validate(options);
    std::size_t n = network.num_cells();

    // effective[k][x-1][a-index][b]
    std::vector<std::array<std::array<std::array<Operator, 4>, 2>, 3>> effective(n);
    for (std::size_t k = 0; k < n; k++) {
        for (int x = 1; x <= 3; x++) {
            for (int ai = 0; ai < 2; ai++) {
                for (int b = 0; b < 4; b++) {
                    effective[k][x - 1][ai][b] =
                        effective_discrimination_operator(network.cells[k], x, ai == 0 ? 1 : -1, b);
                }
            }
        }
    }

    std::vector<PartyAlphabet> parties;
    for (std::size_t k = 0; k < n; k++) {
        parties.push_back({"A" + std::to_string(k + 1), {1, 2, 3}, {{1, -1}, {1, -1}, {1, -1}}});
    }
    for (std::size_t k = 0; k < n; k++) {
        parties.push_back({"B" + std::to_string(k + 1), {kBellInput}, {{0, 1, 2, 3}}});
    }
    CorrelationTable table{TableShape(std::move(parties))};
    const TableShape &shape = table.shape();
    std::vector<Operator> factors(n);
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto inputs = shape.input_tuple(i);
        for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
            auto outcomes = shape.outcome_tuple(i, o);
            for (std::size_t k = 0; k < n; k++) {
                int ai = outcomes[k] == 1 ? 0 : 1;
                factors[k] = effective[k][inputs[k] - 1][ai][outcomes[n + k]];
            }
            double p = trace_of_product(kron(factors), network.target.op()).real();
            table.at(i, o) = std::clamp(p, 0.0, 1.0);
        }
    }
    return table;
}

ProductCorrelation::ProductCorrelation(std::vector<CorrelationTable> cells) : cells_(std::move(cells)) {
}

double ProductCorrelation::prob(std::span<const std::array<int, 3>> inputs,
                                std::span<const std::array<int, 3>> outcomes) const {
    if (inputs.size() != cells_.size() || outcomes.size() != cells_.size()) {
        throw ArgumentError("need one input and one outcome triple per cell");
    }
    double p = 1;
    for (std::size_t k = 0; k < cells_.size(); k++) {
        p *= cells_[k].prob(inputs[k], outcomes[k]);
    }
    return p;
}

ProductCorrelation p1_exact_nqubit(const NQubitNetwork &network, const NetworkOptions &options) {
    network.validate(options);
    std::vector<CorrelationTable> cells;
    for (const auto &cell : network.cells) {
        cells.push_back(p1_exact(cell));
    }
    return ProductCorrelation(std::move(cells));
}

std::span<const std::uint64_t> CountsTable::distribution(std::size_t input) const {
    return std::span<const std::uint64_t>(counts).subspan(shape.offset(input), shape.num_outcomes(input));
}

void CountsTable::validate() const {
    if (counts.size() != shape.total_size() || shots_per_input.size() != shape.num_inputs()) {
        throw ValidationError("counts table does not match its shape");
    }
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        std::uint64_t sum = 0;
        for (auto c : distribution(i)) {
            sum += c;
        }
        if (sum != shots_per_input[i]) {
            throw ValidationError("counts for input " + std::to_string(i) + " do not add up to its shots");
        }
    }
}

std::uint64_t derive_input_seed(std::uint64_t seed, std::size_t input_index) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(input_index) + 1));
}

CountsTable sample(const CorrelationTable &table, std::span<const std::uint64_t> shots_per_input, std::uint64_t seed) {
    table.validate();
    const TableShape &shape = table.shape();
    if (shots_per_input.size() != shape.num_inputs()) {
        throw ArgumentError("need one shot count per input tuple");
    }
    CountsTable out{shape, std::vector<std::uint64_t>(shape.total_size(), 0),
                    std::vector<std::uint64_t>(shots_per_input.begin(), shots_per_input.end()), seed};
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        std::mt19937_64 rng(derive_input_seed(seed, i));
        auto dist = table.distribution(i);
        std::uint64_t remaining = shots_per_input[i];
        double remaining_mass = 1.0;
        std::size_t base = shape.offset(i);
        for (std::size_t o = 0; o + 1 < dist.size() && remaining > 0; o++) {
            double p = remaining_mass > 0 ? std::clamp(dist[o] / remaining_mass, 0.0, 1.0) : 0.0;
            std::uint64_t k = 0;
            if (p >= 1.0) {
                k = remaining;
            } else if (p > 0.0) {
                k = std::binomial_distribution<std::uint64_t>(remaining, p)(rng);
            }
            out.counts[base + o] = k;
            remaining -= k;
            remaining_mass -= dist[o];
        }
        out.counts[base + dist.size() - 1] += remaining;
    }
    return out;
}

CountsTable sample(const CorrelationTable &table, std::uint64_t shots_per_input, std::uint64_t seed) {
    if (shots_per_input == 0) {
        throw ArgumentError("shots per input must be at least 1");
    }
    std::vector<std::uint64_t> shots(table.shape().num_inputs(), shots_per_input);
    return sample(table, shots, seed);
}

CorrelationTable estimate(const CountsTable &counts) {
    counts.validate();
    CorrelationTable table(counts.shape);
    for (std::size_t i = 0; i < counts.shape.num_inputs(); i++) {
        auto shots = counts.shots_per_input[i];
        if (shots == 0) {
            continue;
        }
        auto row = table.distribution(i);
        auto src = counts.distribution(i);
        for (std::size_t o = 0; o < row.size(); o++) {
            row[o] = static_cast<double>(src[o]) / static_cast<double>(shots);
        }
    }
    return table;
}

}  // namespace dqsd
