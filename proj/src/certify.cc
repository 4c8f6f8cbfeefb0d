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

#include "dqsd/certify.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqsd/discriminate.h"
#include "dqsd/errors.h"

namespace dqsd {

namespace {

void check_coverage(const TableShape &shape) {
    if (shape.num_parties() != 3) {
        throw ArgumentError("certification needs a table with parties Alice, Bob, Charlie");
    }
    auto require = [&](std::size_t party, std::initializer_list<int> inputs) {
        const auto &p = shape.party(party);
        for (int x : inputs) {
            if (std::find(p.inputs.begin(), p.inputs.end(), x) == p.inputs.end()) {
                throw ArgumentError("certification table is missing input " + std::to_string(x) + " of party " +
                                    p.name);
            }
        }
    };
    require(0, {1, 2, 3});
    require(1, {1, 2, 3, 4, 5, 6, kBellInput});
    require(2, {1, 2});
}

// (x, y) pairs entering three_chsh.
constexpr std::array<std::array<int, 2>, 12> kBetaTerms{{{1, 1},
                                                         {1, 2},
                                                         {2, 1},
                                                         {2, 2},
                                                         {1, 4},
                                                         {1, 3},
                                                         {3, 4},
                                                         {3, 3},
                                                         {2, 6},
                                                         {2, 5},
                                                         {3, 6},
                                                         {3, 5}}};

std::uint64_t pooled_shots(const CountsTable &counts, int x, int y) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < counts.shape.num_inputs(); i++) {
        auto in = counts.shape.input_tuple(i);
        if (in[0] == x && in[1] == y) {
            n += counts.shots_per_input[i];
        }
    }
    return n;
}

double variance_term(double e, double n) {
    if (n <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, 1 - e * e) / n;
}

}  // namespace

std::string CertificationReport::shots_string() const {
    return shots_used ? std::to_string(*shots_used) : "exact";
}

CertificationReport certify(const CorrelationTable &table, double tolerance) {
    check_coverage(table.shape());
    CertificationReport report;
    report.tolerance = tolerance;
    report.beta = three_chsh(table);
    bool gammas_ok = true;
    for (int b = 0; b < 4; b++) {
        try {
            report.gamma[static_cast<std::size_t>(b)] = gamma_chsh(table, b);
        } catch (const ConditioningError &) {
            report.gamma[static_cast<std::size_t>(b)] = std::numeric_limits<double>::quiet_NaN();
        }
        gammas_ok = gammas_ok && report.gamma[static_cast<std::size_t>(b)] >= kTsirelson - tolerance;
    }
    report.passed = report.beta >= kMaxThreeChsh - tolerance && gammas_ok;
    return report;
}

CertificationErrors certification_standard_errors(const CountsTable &counts) {
    check_coverage(counts.shape);
    CorrelationTable table = estimate(counts);
    CertificationErrors errors;

    double var = 0;
    for (auto [x, y] : kBetaTerms) {
        var += variance_term(correlator(table, x, y), static_cast<double>(pooled_shots(counts, x, y)));
    }
    errors.beta = std::sqrt(var);

    const TableShape &shape = counts.shape;
    for (int b = 0; b < 4; b++) {
        double g = 0;
        for (int x : {1, 2}) {
            for (int z : {1, 2}) {
                std::array<int, 3> in{x, kBellInput, z};
                std::size_t i = shape.input_index(in);
                double nb = 0;
                for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
                    if (shape.outcome_tuple(i, o)[1] == b) {
                        nb += static_cast<double>(counts.count(i, o));
                    }
                }
                double e = 0;
                if (nb > 0) {
                    e = conditional_correlator(table, x, z, b);
                }
                g += variance_term(e, nb);
            }
        }
        errors.gamma[static_cast<std::size_t>(b)] = std::sqrt(g);
    }
    return errors;
}

CertificationReport certify_with_tolerance(const CountsTable &counts, double tolerance) {
    CertificationReport report = certify(estimate(counts), tolerance);
    report.shots_used = counts.shots_per_input.empty()
                            ? 0
                            : *std::max_element(counts.shots_per_input.begin(), counts.shots_per_input.end());
    return report;
}

CertificationReport certify(const CountsTable &counts, double sigmas) {
    if (!(sigmas >= 0)) {
        throw ArgumentError("sigmas must be nonnegative");
    }
    auto se = certification_standard_errors(counts);
    double worst = se.beta;
    for (double g : se.gamma) {
        worst = std::max(worst, g);
    }
    return certify_with_tolerance(counts, sigmas * worst);
}

bool requires_mdi(const DensityMatrix &rho1, const DensityMatrix &rho2, double threshold) {
    auto d = delta(rho1, rho2);
    if (std::max({d[0], d[1], d[2]}) <= threshold) {
        throw DegenerateEnsembleError("the two states are identical");
    }
    return std::max(d[0], d[1]) <= threshold;
}

DensityMatrix right_circular_state() {
    const double r = 1 / std::sqrt(2.0);
    std::array<Complex, 2> ket{Complex(r, 0), Complex(0, r)};
    return DensityMatrix::from_ket(ket);
}

DensityMatrix left_circular_state() {
    const double r = 1 / std::sqrt(2.0);
    std::array<Complex, 2> ket{Complex(r, 0), Complex(0, -r)};
    return DensityMatrix::from_ket(ket);
}

MdiProbeResult mdi_probe(const DeviceStrategy &strategy, std::optional<std::uint64_t> shots, std::uint64_t seed) {
    CorrelationTable table = p2_exact(strategy, right_circular_state());
    MdiProbeResult result;
    double p_plus = 0;
    double se = 0;
    if (shots) {
        if (*shots == 0) {
            throw ArgumentError("probe shots must be at least 1");
        }
        P2Table p2 = extract_p2(sample(table, *shots, seed));
        p_plus = p2.single(1, 3);
        se = std::sqrt(p_plus * (1 - p_plus) / static_cast<double>(*shots));
    } else {
        p_plus = extract_p2(table).single(1, 3);
    }
    result.probe_outcome_distribution = {p_plus, 1 - p_plus};
    if (std::abs(p_plus - 0.5) <= std::max(4 * se, kTolerance)) {
        throw InconclusiveError("probe outcome split " + std::to_string(p_plus) + " is too close to 50/50");
    }
    result.sign = p_plus > 0.5 ? 1 : -1;
    return result;
}

}  // namespace dqsd
