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

#include "dqsd/discriminate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dqsd/errors.h"

namespace dqsd {

namespace {

std::size_t pow_size(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) {
        r *= base;
    }
    return r;
}

// Checks the A_1..A_N, B_1..B_N layout and returns N.
std::size_t p2_layout(const TableShape &shape) {
    if (shape.num_parties() < 2 || shape.num_parties() % 2) {
        throw ArgumentError("p2 tables need parties A_1..A_N followed by B_1..B_N");
    }
    std::size_t n = shape.num_parties() / 2;
    for (std::size_t k = 0; k < n; k++) {
        const auto &a = shape.party(k);
        for (std::size_t s = 0; s < a.inputs.size(); s++) {
            if (a.inputs[s] < 1 || a.inputs[s] > 3) {
                throw ArgumentError("party " + a.name + " has input outside 1..3");
            }
            auto outs = a.outcomes[s];
            std::sort(outs.begin(), outs.end());
            if (outs != std::vector<int>{-1, 1}) {
                throw ArgumentError("party " + a.name + " is missing a +-1 outcome category");
            }
        }
        const auto &b = shape.party(n + k);
        auto it = std::find(b.inputs.begin(), b.inputs.end(), kBellInput);
        if (it == b.inputs.end()) {
            throw ArgumentError("party " + b.name + " has no diamond input");
        }
        auto outs = b.outcomes[static_cast<std::size_t>(it - b.inputs.begin())];
        std::sort(outs.begin(), outs.end());
        if (outs != std::vector<int>{0, 1, 2, 3}) {
            throw ArgumentError("party " + b.name + " is missing a Bell outcome category");
        }
    }
    return n;
}

// Calls visit(x-index, aggregated a-index, input index, outcome index) for every diamond entry.
template <typename Visit>
void for_each_category(const TableShape &shape, std::size_t n, Visit visit) {
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto inputs = shape.input_tuple(i);
        bool diamond = std::all_of(inputs.begin() + static_cast<std::ptrdiff_t>(n), inputs.end(),
                                   [](int y) { return y == kBellInput; });
        if (!diamond) {
            continue;
        }
        std::vector<int> x(inputs.begin(), inputs.begin() + static_cast<std::ptrdiff_t>(n));
        std::size_t xi = P2Table::input_index(x);
        for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
            auto outcomes = shape.outcome_tuple(i, o);
            std::size_t ai = 0;
            for (std::size_t k = 0; k < n; k++) {
                int a = outcomes[k] * p2_category_sign(x[k], outcomes[n + k]);
                ai = ai * 2 + (a == 1 ? 0 : 1);
            }
            visit(xi, ai, i, o);
        }
    }
}

double plus_prob(const Operator &projector_plus, const DensityMatrix &rho) {
    return trace_of_product(projector_plus, rho.op()).real();
}

void check_pure_qubit(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw ArgumentError("expected a single-qubit state");
    }
    if (!rho.is_pure()) {
        throw ValidationError("expected a pure state");
    }
}

struct Ranking {
    std::size_t best = 0;
    double margin = 0;
};

Ranking rank(std::span<const double> distances) {
    Ranking r;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < distances.size(); j++) {
        if (distances[j] < best) {
            best = distances[j];
            r.best = j;
        }
    }
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < distances.size(); j++) {
        if (j != r.best) {
            second = std::min(second, distances[j]);
        }
    }
    r.margin = second - best;
    return r;
}

void check_margin(const DiscriminationDecision &d, const DecisionOptions &options) {
    if (!(d.margin > 0) || d.margin < options.refuse_sigmas * d.standard_error) {
        throw InconclusiveError("decision margin " + std::to_string(d.margin) + " is below " +
                                std::to_string(options.refuse_sigmas) + " standard errors (" +
                                std::to_string(d.standard_error) + ")");
    }
}

}  // namespace

const char *to_string(DecisionMode mode) {
    return mode == DecisionMode::DI ? "DI" : "MDI";
}

P2Table::P2Table(std::size_t num_qubits, std::vector<double> values, std::vector<bool> covered,
                 std::vector<std::uint64_t> shots)
    : num_qubits_(num_qubits), values_(std::move(values)), covered_(std::move(covered)), shots_(std::move(shots)) {
    std::size_t inputs = pow_size(3, num_qubits_);
    if (num_qubits_ == 0 || values_.size() != inputs * (std::size_t{1} << num_qubits_) || covered_.size() != inputs) {
        throw ArgumentError("P2 table size does not match its qubit count");
    }
    if (!shots_.empty() && shots_.size() != inputs) {
        throw ArgumentError("P2 table needs one shot count per input");
    }
}

std::size_t P2Table::input_index(std::span<const int> x) {
    std::size_t idx = 0;
    for (int v : x) {
        if (v < 1 || v > 3) {
            throw ArgumentError("P2 inputs must be in 1..3");
        }
        idx = idx * 3 + static_cast<std::size_t>(v - 1);
    }
    return idx;
}

std::vector<int> P2Table::input_tuple(std::size_t index, std::size_t num_qubits) {
    std::vector<int> x(num_qubits);
    for (std::size_t k = num_qubits; k-- > 0;) {
        x[k] = static_cast<int>(index % 3) + 1;
        index /= 3;
    }
    return x;
}

bool P2Table::covers(std::span<const int> x) const {
    return x.size() == num_qubits_ && covered_[input_index(x)];
}

std::span<const double> P2Table::distribution(std::span<const int> x) const {
    if (x.size() != num_qubits_) {
        throw ArgumentError("input tuple length does not match the P2 table");
    }
    std::size_t idx = input_index(x);
    if (!covered_[idx]) {
        throw ArgumentError("P2 table has no data for input " + format_index_tuple(x));
    }
    std::size_t width = std::size_t{1} << num_qubits_;
    return std::span<const double>(values_).subspan(idx * width, width);
}

double P2Table::prob(std::span<const int> x, std::span<const int> a) const {
    if (a.size() != num_qubits_) {
        throw ArgumentError("outcome tuple length does not match the P2 table");
    }
    std::size_t ai = 0;
    for (int v : a) {
        if (v != 1 && v != -1) {
            throw ArgumentError("P2 outcomes must be +1 or -1");
        }
        ai = ai * 2 + (v == 1 ? 0 : 1);
    }
    return distribution(x)[ai];
}

std::optional<std::uint64_t> P2Table::shots(std::span<const int> x) const {
    if (shots_.empty()) {
        return std::nullopt;
    }
    return shots_[input_index(x)];
}

double P2Table::single(int a, int x) const {
    std::array<int, 1> xs{x};
    std::array<int, 1> as{a};
    return prob(xs, as);
}

int p2_category_sign(int x, int b) {
    return (b == 0 || b == x) ? 1 : -1;
}

P2Table extract_p2(const CorrelationTable &p2) {
    std::size_t n = p2_layout(p2.shape());
    std::size_t inputs = pow_size(3, n);
    std::size_t width = std::size_t{1} << n;
    std::vector<double> values(inputs * width, 0.0);
    std::vector<bool> covered(inputs, false);
    for_each_category(p2.shape(), n, [&](std::size_t xi, std::size_t ai, std::size_t i, std::size_t o) {
        covered[xi] = true;
        values[xi * width + ai] += p2.at(i, o);
    });
    return P2Table(n, std::move(values), std::move(covered));
}

P2Table extract_p2(const CountsTable &p2_counts) {
    p2_counts.validate();
    std::size_t n = p2_layout(p2_counts.shape);
    std::size_t inputs = pow_size(3, n);
    std::size_t width = std::size_t{1} << n;
    std::vector<std::uint64_t> tallies(inputs * width, 0);
    std::vector<std::uint64_t> shots(inputs, 0);
    std::vector<bool> covered(inputs, false);
    for_each_category(p2_counts.shape, n, [&](std::size_t xi, std::size_t ai, std::size_t i, std::size_t o) {
        tallies[xi * width + ai] += p2_counts.count(i, o);
    });
    for (std::size_t i = 0; i < p2_counts.shape.num_inputs(); i++) {
        auto in = p2_counts.shape.input_tuple(i);
        bool diamond = std::all_of(in.begin() + static_cast<std::ptrdiff_t>(n), in.end(),
                                   [](int y) { return y == kBellInput; });
        if (diamond) {
            std::size_t xi = P2Table::input_index(std::span<const int>(in).first(n));
            shots[xi] += p2_counts.shots_per_input[i];
        }
    }
    std::vector<double> values(inputs * width, 0.0);
    for (std::size_t xi = 0; xi < inputs; xi++) {
        if (shots[xi] == 0) {
            continue;
        }
        covered[xi] = true;
        for (std::size_t a = 0; a < width; a++) {
            values[xi * width + a] = static_cast<double>(tallies[xi * width + a]) / static_cast<double>(shots[xi]);
        }
    }
    return P2Table(n, std::move(values), std::move(covered), std::move(shots));
}

std::array<double, 3> delta(const PureStateParams &s1, const PureStateParams &s2) {
    double c1 = std::cos(s1.omega);
    double c2 = std::cos(s2.omega);
    Complex z = std::polar(std::sin(2 * s1.omega), -s1.theta) - std::polar(std::sin(2 * s2.omega), -s2.theta);
    return {2 * std::abs(c1 * c1 - c2 * c2), std::abs(z.real()), std::abs(z.imag())};
}

std::array<double, 3> delta(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    check_pure_qubit(rho1);
    check_pure_qubit(rho2);
    return delta(PureStateParams::from_state(rho1), PureStateParams::from_state(rho2));
}

std::array<double, 3> delta_operational(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    check_pure_qubit(rho1);
    check_pure_qubit(rho2);
    Operator diff = rho1.op() - rho2.op();
    std::array<double, 3> out{};
    for (int x = 1; x <= 3; x++) {
        for (int a : {1, -1}) {
            out[x - 1] += std::abs(trace_of_product(projector(a, x), diff).real());
        }
    }
    return out;
}

double distance(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    auto d = delta(rho1, rho2);
    return *std::max_element(d.begin(), d.end()) / 2;
}

MeasurementChoice choose_measurement(const DensityMatrix &rho1, const DensityMatrix &rho2, double threshold) {
    auto d = delta(rho1, rho2);
    if (std::max({d[0], d[1], d[2]}) <= threshold) {
        throw DegenerateEnsembleError("the two states are identical");
    }
    if (std::max(d[0], d[1]) > threshold) {
        return {d[1] > d[0] + threshold ? 2 : 1, DecisionMode::DI};
    }
    return {3, DecisionMode::MDI};
}

void validate_ensemble(const Ensemble &ensemble, std::size_t num_qubits) {
    if (ensemble.size() < 2) {
        throw ArgumentError("an ensemble needs at least two members");
    }
    double total = 0;
    for (const auto &m : ensemble) {
        if (!(m.prior >= 0 && m.prior <= 1)) {
            throw ValidationError("ensemble priors must lie in [0, 1]");
        }
        if (m.state.num_qubits() != num_qubits) {
            throw ArgumentError("ensemble member has the wrong number of qubits");
        }
        if (!m.state.is_pure()) {
            throw ValidationError("ensemble members must be pure states");
        }
        total += m.prior;
    }
    if (std::abs(total - 1) > kTolerance) {
        throw ValidationError("ensemble priors must sum to 1");
    }
}

DiscriminationDecision discriminate_single(const P2Table &p2, const Ensemble &ensemble,
                                           const CertificationReport &certification,
                                           const std::optional<MdiProbeResult> &probe,
                                           const DecisionOptions &options) {
    if (!certification.passed) {
        throw UncertifiedDevicesError("devices failed certification; refusing to discriminate");
    }
    if (p2.num_qubits() != 1) {
        throw ArgumentError("discriminate_single needs a single-qubit P2 table");
    }
    validate_ensemble(ensemble, 1);

    std::set<int> inputs;
    bool needs_mdi = false;
    for (std::size_t i = 0; i < ensemble.size(); i++) {
        for (std::size_t j = i + 1; j < ensemble.size(); j++) {
            auto choice = choose_measurement(ensemble[i].state, ensemble[j].state, options.threshold);
            inputs.insert(choice.input);
            needs_mdi |= choice.mode == DecisionMode::MDI;
        }
    }
    if (needs_mdi && !probe) {
        throw MdiRequiredError("a pair of ensemble members differs only in the third Pauli correlation");
    }

    DiscriminationDecision decision;
    decision.mode = needs_mdi ? DecisionMode::MDI : DecisionMode::DI;
    std::vector<double> observed;
    for (int x : inputs) {
        double p = p2.single(1, x);
        if (x == 3 && probe && probe->sign == -1) {
            p = p2.single(-1, x);
        }
        observed.push_back(p);
        decision.used_inputs.push_back({x});
        std::array<int, 1> xs{x};
        if (auto n = p2.shots(xs)) {
            double se = *n ? std::sqrt(p * (1 - p) / static_cast<double>(*n)) : std::numeric_limits<double>::infinity();
            decision.standard_error = std::max(decision.standard_error, se);
        }
    }

    std::vector<double> distances;
    for (const auto &member : ensemble) {
        double d = 0;
        std::size_t k = 0;
        for (int x : inputs) {
            d = std::max(d, std::abs(observed[k++] - plus_prob(projector(1, x), member.state)));
        }
        distances.push_back(d);
    }
    Ranking r = rank(distances);
    decision.chosen_index = r.best;
    decision.margin = r.margin;
    check_margin(decision, options);
    return decision;
}

IndexChoice select_index_nqubit(const DensityMatrix &phi_j, const DensityMatrix &phi_k, double threshold) {
    if (phi_j.num_qubits() != phi_k.num_qubits()) {
        throw ArgumentError("states have different qubit counts");
    }
    std::size_t n = phi_j.num_qubits();
    auto sj = pauli_decompose(phi_j);
    auto sk = pauli_decompose(phi_k);

    struct Best {
        double diff = -1;
        std::vector<int> indices;
    };
    auto search = [&](auto allowed) {
        Best best;
        for (std::size_t flat = 1; flat < sj.size(); flat++) {
            auto idx = PauliCoefficients::index_tuple(flat, n);
            if (!std::all_of(idx.begin(), idx.end(), allowed)) {
                continue;
            }
            double d = std::abs(sj.at_flat(flat) - sk.at_flat(flat));
            if (d > best.diff) {
                best = {d, idx};
            }
        }
        return best;
    };

    Best all = search([](int) { return true; });
    if (all.diff <= threshold) {
        throw DegenerateEnsembleError("the two states are identical");
    }
    Best pauli12 = search([](int m) { return m == 1 || m == 2; });
    if (pauli12.diff > threshold) {
        return {pauli12.indices, DecisionMode::DI};
    }
    Best real_part = search([](int m) { return m != 3; });
    if (real_part.diff > threshold) {
        return {real_part.indices, DecisionMode::DI};
    }
    return {all.indices, DecisionMode::MDI};
}

std::vector<int> input_for_indices(std::span<const int> indices) {
    std::vector<int> x;
    for (int m : indices) {
        if (m < 0 || m > 3) {
            throw ArgumentError("Pauli index must be in 0..3");
        }
        x.push_back(m == 0 ? 1 : m);
    }
    return x;
}

double coefficient_from_correlations(const P2Table &p2, std::span<const int> indices) {
    if (indices.size() != p2.num_qubits()) {
        throw ArgumentError("index tuple length does not match the P2 table");
    }
    auto x = input_for_indices(indices);
    auto dist = p2.distribution(x);
    std::size_t n = indices.size();
    double s = 0;
    for (std::size_t ai = 0; ai < dist.size(); ai++) {
        int sign = 1;
        for (std::size_t k = 0; k < n; k++) {
            bool minus = (ai >> (n - 1 - k)) & 1;
            if (indices[k] != 0 && minus) {
                sign = -sign;
            }
        }
        s += sign * dist[ai];
    }
    return s;
}

double distance_nqubit(const DensityMatrix &phi_j, const DensityMatrix &phi_k) {
    if (phi_j.num_qubits() != phi_k.num_qubits()) {
        throw ArgumentError("states have different qubit counts");
    }
    std::size_t n = phi_j.num_qubits();
    Operator diff = phi_j.op() - phi_k.op();
    double best = 0;
    std::vector<Operator> factors(n);
    for (std::size_t xi = 0; xi < pow_size(3, n); xi++) {
        auto x = P2Table::input_tuple(xi, n);
        double sum = 0;
        for (std::size_t ai = 0; ai < (std::size_t{1} << n); ai++) {
            for (std::size_t k = 0; k < n; k++) {
                factors[k] = projector(((ai >> (n - 1 - k)) & 1) ? -1 : 1, x[k]);
            }
            sum += std::abs(trace_of_product(kron(factors), diff).real());
        }
        best = std::max(best, sum);
    }
    return best / 2;
}

DiscriminationDecision discriminate_nqubit(const P2Table &p2, const Ensemble &ensemble,
                                           std::span<const CertificationReport> certifications,
                                           std::span<const std::optional<MdiProbeResult>> probes,
                                           const DecisionOptions &options) {
    std::size_t n = p2.num_qubits();
    if (certifications.size() != n) {
        throw ArgumentError("need one certification report per cell");
    }
    for (const auto &c : certifications) {
        if (!c.passed) {
            throw UncertifiedDevicesError("a network cell failed certification; refusing to discriminate");
        }
    }
    if (!probes.empty() && probes.size() != n) {
        throw ArgumentError("need one (optional) probe result per cell");
    }
    validate_ensemble(ensemble, n);

    std::set<std::vector<int>> tuples;
    bool needs_mdi = false;
    for (std::size_t i = 0; i < ensemble.size(); i++) {
        for (std::size_t j = i + 1; j < ensemble.size(); j++) {
            auto choice = select_index_nqubit(ensemble[i].state, ensemble[j].state, options.threshold);
            tuples.insert(choice.indices);
            needs_mdi |= choice.mode == DecisionMode::MDI;
        }
    }

    DiscriminationDecision decision;
    decision.mode = needs_mdi ? DecisionMode::MDI : DecisionMode::DI;
    std::vector<double> observed;
    for (const auto &m : tuples) {
        double s = coefficient_from_correlations(p2, m);
        for (std::size_t k = 0; k < n; k++) {
            if (m[k] != 3) {
                continue;
            }
            if (probes.empty() || !probes[k]) {
                throw MdiRequiredError("cell " + std::to_string(k + 1) + " needs a trusted probe for index tuple " +
                                       format_index_tuple(m));
            }
            s *= probes[k]->sign;
        }
        observed.push_back(s);
        decision.used_inputs.push_back(m);
        if (auto shots = p2.shots(input_for_indices(m))) {
            double se = *shots ? std::sqrt(std::max(0.0, 1 - s * s) / static_cast<double>(*shots))
                               : std::numeric_limits<double>::infinity();
            decision.standard_error = std::max(decision.standard_error, se);
        }
    }

    std::vector<double> distances;
    for (const auto &member : ensemble) {
        double d = 0;
        std::size_t k = 0;
        for (const auto &m : tuples) {
            d = std::max(d, std::abs(observed[k++] - pauli_string_expectation(member.state.op(), m).real()));
        }
        distances.push_back(d);
    }
    Ranking r = rank(distances);
    decision.chosen_index = r.best;
    decision.margin = r.margin;
    check_margin(decision, options);
    return decision;
}

}  // namespace dqsd
