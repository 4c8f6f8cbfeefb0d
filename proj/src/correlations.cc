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

#include "dqsd/correlations.h"

#include <algorithm>
#include <cmath>

#include "dqsd/errors.h"

namespace dqsd {

namespace {

std::string describe(std::span<const int> labels) {
    std::string out = "(";
    for (std::size_t k = 0; k < labels.size(); k++) {
        if (k) {
            out += ",";
        }
        out += labels[k] == kBellInput ? std::string("diamond") : std::to_string(labels[k]);
    }
    return out + ")";
}

std::size_t position_of(const std::vector<int> &labels, int label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        return labels.size();
    }
    return static_cast<std::size_t>(it - labels.begin());
}

int binary_sign(int label) {
    if (label != 1 && label != -1) {
        throw ArgumentError("correlators need outcomes in {+1, -1}, got " + std::to_string(label));
    }
    return label;
}

}  // namespace

TableShape::TableShape(std::vector<PartyAlphabet> parties) : parties_(std::move(parties)) {
    if (parties_.empty()) {
        throw ArgumentError("a table needs at least one party");
    }
    for (const auto &p : parties_) {
        if (p.inputs.empty() || p.inputs.size() != p.outcomes.size()) {
            throw ArgumentError("party " + p.name + " needs one outcome list per input");
        }
        for (const auto &o : p.outcomes) {
            if (o.empty()) {
                throw ArgumentError("party " + p.name + " has an input without outcomes");
            }
        }
        num_inputs_ *= p.inputs.size();
    }
    offsets_.resize(num_inputs_ + 1);
    offsets_[0] = 0;
    for (std::size_t i = 0; i < num_inputs_; i++) {
        offsets_[i + 1] = offsets_[i] + num_outcomes(i);
    }
}

std::vector<std::size_t> TableShape::input_positions(std::size_t input) const {
    std::vector<std::size_t> pos(parties_.size());
    for (std::size_t k = parties_.size(); k-- > 0;) {
        std::size_t radix = parties_[k].inputs.size();
        pos[k] = input % radix;
        input /= radix;
    }
    return pos;
}

std::vector<int> TableShape::input_tuple(std::size_t input) const {
    auto pos = input_positions(input);
    std::vector<int> labels(parties_.size());
    for (std::size_t k = 0; k < parties_.size(); k++) {
        labels[k] = parties_[k].inputs[pos[k]];
    }
    return labels;
}

std::optional<std::size_t> TableShape::find_input(std::span<const int> labels) const {
    if (labels.size() != parties_.size()) {
        return std::nullopt;
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < parties_.size(); k++) {
        std::size_t p = position_of(parties_[k].inputs, labels[k]);
        if (p == parties_[k].inputs.size()) {
            return std::nullopt;
        }
        index = index * parties_[k].inputs.size() + p;
    }
    return index;
}

std::size_t TableShape::input_index(std::span<const int> labels) const {
    auto found = find_input(labels);
    if (!found) {
        throw ArgumentError("input tuple " + describe(labels) + " is not covered by the table");
    }
    return *found;
}

std::size_t TableShape::num_outcomes(std::size_t input) const {
    auto pos = input_positions(input);
    std::size_t n = 1;
    for (std::size_t k = 0; k < parties_.size(); k++) {
        n *= parties_[k].outcomes[pos[k]].size();
    }
    return n;
}

std::vector<int> TableShape::outcome_tuple(std::size_t input, std::size_t outcome) const {
    auto pos = input_positions(input);
    std::vector<int> labels(parties_.size());
    for (std::size_t k = parties_.size(); k-- > 0;) {
        const auto &alphabet = parties_[k].outcomes[pos[k]];
        labels[k] = alphabet[outcome % alphabet.size()];
        outcome /= alphabet.size();
    }
    return labels;
}

std::size_t TableShape::outcome_index(std::size_t input, std::span<const int> labels) const {
    if (labels.size() != parties_.size()) {
        throw ArgumentError("outcome tuple has the wrong number of parties");
    }
    auto pos = input_positions(input);
    std::size_t index = 0;
    for (std::size_t k = 0; k < parties_.size(); k++) {
        const auto &alphabet = parties_[k].outcomes[pos[k]];
        std::size_t p = position_of(alphabet, labels[k]);
        if (p == alphabet.size()) {
            throw ArgumentError("outcome tuple " + describe(labels) + " is not valid for input " +
                                describe(input_tuple(input)));
        }
        index = index * alphabet.size() + p;
    }
    return index;
}

CorrelationTable::CorrelationTable(TableShape shape) : shape_(std::move(shape)), values_(shape_.total_size(), 0.0) {
}

double CorrelationTable::prob(std::span<const int> inputs, std::span<const int> outcomes) const {
    std::size_t i = shape_.input_index(inputs);
    return at(i, shape_.outcome_index(i, outcomes));
}

std::span<double> CorrelationTable::distribution(std::size_t input) {
    return std::span<double>(values_).subspan(shape_.offset(input), shape_.num_outcomes(input));
}

std::span<const double> CorrelationTable::distribution(std::size_t input) const {
    return std::span<const double>(values_).subspan(shape_.offset(input), shape_.num_outcomes(input));
}

void CorrelationTable::validate(double tol) const {
    for (std::size_t i = 0; i < shape_.num_inputs(); i++) {
        double sum = 0;
        for (double p : distribution(i)) {
            if (!(p >= -tol && p <= 1 + tol)) {
                throw ValidationError("probability out of range for input " + describe(shape_.input_tuple(i)));
            }
            sum += p;
        }
        if (std::abs(sum - 1) > tol) {
            throw ValidationError("probabilities for input " + describe(shape_.input_tuple(i)) + " sum to " +
                                  std::to_string(sum));
        }
    }
}

bool CorrelationTable::approx_equal(const CorrelationTable &other, double tol) const {
    if (!(shape_ == other.shape_)) {
        return false;
    }
    for (std::size_t k = 0; k < values_.size(); k++) {
        if (std::abs(values_[k] - other.values_[k]) > tol) {
            return false;
        }
    }
    return true;
}

void Povm::validate(double tol) const {
    if (elements.empty() || elements.size() != outcomes.size()) {
        throw ValidationError("POVM for input " + std::to_string(input) + " needs one element per outcome");
    }
    Operator sum(dim());
    for (const auto &e : elements) {
        if (e.dim() != dim()) {
            throw ValidationError("POVM elements must share one dimension");
        }
        if (!e.is_psd(tol)) {
            throw ValidationError("POVM element for input " + std::to_string(input) + " is not PSD");
        }
        sum += e;
    }
    if (!sum.approx_equal(Operator::identity(dim()), tol)) {
        throw ValidationError("POVM elements for input " + std::to_string(input) + " do not sum to identity");
    }
}

Povm Povm::conjugate() const {
    Povm out = *this;
    for (auto &e : out.elements) {
        e = e.conjugate();
    }
    return out;
}

Povm binary_povm(int input, const Operator &plus_projector) {
    return Povm{input, {1, -1}, {plus_projector, Operator::identity(plus_projector.dim()) - plus_projector}};
}

Povm observable_povm(int input, const Operator &observable) {
    Operator plus = Operator::identity(observable.dim()) + observable;
    plus *= 0.5;
    return binary_povm(input, plus);
}

CorrelationTable exact_correlation(const DensityMatrix &state, std::span<const PartyMeasurements> parties) {
    std::vector<PartyAlphabet> alphabets;
    std::size_t total_dim = 1;
    for (const auto &party : parties) {
        if (party.settings.empty()) {
            throw ArgumentError("party " + party.name + " has no measurement settings");
        }
        PartyAlphabet alphabet{party.name, {}, {}};
        std::size_t dim = party.settings.front().dim();
        for (const auto &povm : party.settings) {
            povm.validate();
            if (povm.dim() != dim) {
                throw ArgumentError("party " + party.name + " mixes measurement dimensions");
            }
            alphabet.inputs.push_back(povm.input);
            alphabet.outcomes.push_back(povm.outcomes);
        }
        total_dim *= dim;
        alphabets.push_back(std::move(alphabet));
    }
    if (total_dim != state.dim()) {
        throw ArgumentError("measurements act on dimension " + std::to_string(total_dim) + " but the state has " +
                            std::to_string(state.dim()));
    }

    CorrelationTable table{TableShape(std::move(alphabets))};
    const TableShape &shape = table.shape();
    std::vector<Operator> factors(parties.size());
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto inputs = shape.input_tuple(i);
        for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
            auto outcomes = shape.outcome_tuple(i, o);
            for (std::size_t k = 0; k < parties.size(); k++) {
                const auto &alphabet = shape.party(k);
                std::size_t s = position_of(alphabet.inputs, inputs[k]);
                const Povm &povm = parties[k].settings[s];
                factors[k] = povm.elements[position_of(povm.outcomes, outcomes[k])];
            }
            double p = trace_of_product(kron(factors), state.op()).real();
            // Clamp rounding noise so the table stays a valid distribution.
            table.at(i, o) = std::clamp(p, 0.0, 1.0);
        }
    }
    return table;
}

double correlator(const CorrelationTable &table, std::span<const PartyInput> fixed) {
    const TableShape &shape = table.shape();
    for (const auto &f : fixed) {
        if (f.party >= shape.num_parties()) {
            throw ArgumentError("correlator references a missing party");
        }
    }
    double total = 0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto inputs = shape.input_tuple(i);
        bool match = std::all_of(fixed.begin(), fixed.end(), [&](const PartyInput &f) {
            return inputs[f.party] == f.input;
        });
        if (!match) {
            continue;
        }
        matched++;
        auto dist = table.distribution(i);
        for (std::size_t o = 0; o < dist.size(); o++) {
            auto outcomes = shape.outcome_tuple(i, o);
            int sign = 1;
            for (const auto &f : fixed) {
                sign *= binary_sign(outcomes[f.party]);
            }
            total += sign * dist[o];
        }
    }
    if (matched == 0) {
        std::string what;
        for (const auto &f : fixed) {
            what += " " + shape.party(f.party).name + "=" + std::to_string(f.input);
        }
        throw ArgumentError("no input tuple matches" + what);
    }
    return total / static_cast<double>(matched);
}

double correlator(const CorrelationTable &table, int x, int y) {
    std::array<PartyInput, 2> fixed{PartyInput{0, x}, PartyInput{1, y}};
    return correlator(table, fixed);
}

double chsh(const CorrelationTable &table, int m, int n, int p, int q, PartyPair parties) {
    auto c = [&](int x, int y) {
        std::array<PartyInput, 2> fixed{PartyInput{parties.first, x}, PartyInput{parties.second, y}};
        return correlator(table, fixed);
    };
    return c(m, p) + c(m, q) + c(n, p) - c(n, q);
}

double three_chsh(const CorrelationTable &table, PartyPair parties) {
    return chsh(table, 1, 2, 1, 2, parties) + chsh(table, 1, 3, 4, 3, parties) + chsh(table, 2, 3, 6, 5, parties);
}

double conditional_correlator(const CorrelationTable &table, int x, int z, int b, GammaParties parties) {
    const TableShape &shape = table.shape();
    if (std::max({parties.alice, parties.bob, parties.charlie}) >= shape.num_parties()) {
        throw ArgumentError("conditional correlator references a missing party");
    }
    double joint = 0;
    double marginal = 0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto inputs = shape.input_tuple(i);
        if (inputs[parties.alice] != x || inputs[parties.bob] != kBellInput || inputs[parties.charlie] != z) {
            continue;
        }
        matched++;
        auto dist = table.distribution(i);
        for (std::size_t o = 0; o < dist.size(); o++) {
            auto outcomes = shape.outcome_tuple(i, o);
            if (outcomes[parties.bob] != b) {
                continue;
            }
            joint += binary_sign(outcomes[parties.alice]) * binary_sign(outcomes[parties.charlie]) * dist[o];
            marginal += dist[o];
        }
    }
    if (matched == 0) {
        throw ArgumentError("table has no (x=" + std::to_string(x) + ", diamond, z=" + std::to_string(z) + ") input");
    }
    if (marginal <= 0) {
        throw ConditioningError("Bell outcome " + std::to_string(b) + " never occurs for x=" + std::to_string(x) +
                                ", z=" + std::to_string(z));
    }
    return joint / marginal;
}

double gamma_chsh_form(const CorrelationTable &table, int form, int b, GammaParties parties) {
    if (form < 0 || form > 3 || b < 0 || b > 3) {
        throw ArgumentError("gamma form and Bell outcome must be in 0..3");
    }
    auto c = [&](int x, int z) { return conditional_correlator(table, x, z, b, parties); };
    double g0 = c(1, 1) + c(1, 2) + c(2, 1) - c(2, 2);
    double g1 = c(1, 1) + c(1, 2) - c(2, 1) + c(2, 2);
    switch (form) {
        case 0:
            return g0;
        case 1:
            return g1;
        case 2:
            return -g1;
        default:
            return -g0;
    }
}

double gamma_chsh(const CorrelationTable &table, int b, GammaParties parties) {
    return gamma_chsh_form(table, b, b, parties);
}

std::array<double, 4> gamma_chsh_all(const CorrelationTable &table, GammaParties parties) {
    return {gamma_chsh(table, 0, parties), gamma_chsh(table, 1, parties), gamma_chsh(table, 2, parties),
            gamma_chsh(table, 3, parties)};
}

}  // namespace dqsd
