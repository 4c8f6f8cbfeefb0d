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

#ifndef DQSD_CERTIFY_H
#define DQSD_CERTIFY_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dqsd/correlations.h"
#include "dqsd/netsim.h"

namespace dqsd {

/// 6 sqrt2, the largest quantum value of three_chsh.
inline constexpr double kMaxThreeChsh = 8.48528137423857029;
/// 2 sqrt2, Tsirelson's bound for one CHSH expression.
inline constexpr double kTsirelson = 2.82842712474619010;

struct CertificationReport {
    double beta = 0;
    std::array<double, 4> gamma{};
    double tolerance = 0;
    bool passed = false;
    /// Shots per input tuple, or nullopt for exact statistics.
    std::optional<std::uint64_t> shots_used;

    std::string shots_string() const;
};

/// Default tolerance for exact tables.
inline constexpr double kExactCertificationTolerance = 1e-9;

/// The certification gate. Reads only the table (black-box discipline): passes iff
/// beta >= 6 sqrt2 - tolerance and every b-conditioned form reaches 2 sqrt2 - tolerance.
///
/// The table must have parties Alice, Bob, Charlie and cover Alice inputs 1..3, Bob
/// inputs 1..6 and the diamond input, and Charlie inputs 1..2. A Bell outcome that
/// never occurs fails the gate rather than throwing.
CertificationReport certify(const CorrelationTable &table, double tolerance = kExactCertificationTolerance);

/// Standard errors of beta and of each gamma form estimated from counts, using the
/// binomial variance (1 - E^2)/n of every correlator estimate.
struct CertificationErrors {
    double beta = 0;
    std::array<double, 4> gamma{};
};
CertificationErrors certification_standard_errors(const CountsTable &counts);

/// Finite-shot gate: tolerance = sigmas * (largest standard error among beta and the gammas).
CertificationReport certify(const CountsTable &counts, double sigmas = 4.0);

/// Same gate with an explicit tolerance.
CertificationReport certify_with_tolerance(const CountsTable &counts, double tolerance);

/// True iff the two pure states differ by at most `threshold` in both the first and the
/// second Pauli correlation, so that only the third (conjugation-ambiguous) one separates them.
/// Throws DegenerateEnsembleError for identical states.
bool requires_mdi(const DensityMatrix &rho1, const DensityMatrix &rho2, double threshold = kTolerance);

struct MdiProbeResult {
    /// +1 if Alice's third setting acts as sigma_3, -1 if it acts as -sigma_3.
    int sign = 1;
    /// Aggregated P2(+1|3), P2(-1|3) observed on the trusted probe.
    std::array<double, 2> probe_outcome_distribution{};
};

/// Runs a discrimination round on the trusted probe |R><R| with Alice's input 3.
///
/// With `shots` unset the exact distribution is used. Otherwise the probe round is
/// sampled; the result is inconclusive (InconclusiveError) when the observed P2(+1|3) is
/// within 4 estimated standard errors of 1/2.
MdiProbeResult mdi_probe(const DeviceStrategy &strategy, std::optional<std::uint64_t> shots = std::nullopt,
                         std::uint64_t seed = 0);

/// |R> = (|0> + i|1>)/sqrt2 and |L> = (|0> - i|1>)/sqrt2.
DensityMatrix right_circular_state();
DensityMatrix left_circular_state();

}  // namespace dqsd

#endif  // DQSD_CERTIFY_H
