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

#ifndef DQSD_CLI_H
#define DQSD_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqsd/discriminate.h"
#include "dqsd/errors.h"
#include "dqsd/netsim.h"

namespace dqsd::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kCertificationFailed = 3,
    kRefused = 4,  ///< inconclusive or mdi-required
    kInternalError = 5,
};

/// Invalid configuration. `field` names the offending key, prefixed by its source.
struct ConfigError : Error {
    ConfigError(std::string field, const std::string &message)
        : Error(field + ": " + message), field(std::move(field)) {}
    std::string field;
};

struct RunConfig {
    std::string command;                  ///< certify | discriminate | sweep | demo
    std::string strategy = "honest";      ///< honest | conjugated | werner:P | classical:FILE
    std::string ensemble = "0.5@0;0.5@+";  ///< see parse_ensemble
    std::optional<std::uint64_t> shots;   ///< nullopt means exact
    std::uint64_t seed = 1;
    std::optional<double> tolerance;      ///< certification tolerance; default depends on shots
    double grid_step = 0.01;
    std::string output;                   ///< empty means stdout
    std::string format = "csv";           ///< csv | jsonl
    std::uint64_t trials = 1;
    bool mdi_probe = false;
    std::string counts_output;            ///< optional counts CSV
};

/// Sets one documented key from its textual value. `where` prefixes error messages.
void set_field(RunConfig &config, const std::string &key, const std::string &value, const std::string &where);

/// Parses "key = value" lines; '#' starts a comment. Later keys override earlier ones.
void apply_config_text(RunConfig &config, const std::string &text, const std::string &source);
void apply_config_file(RunConfig &config, const std::string &path);

/// Cross-field checks (command present, referenced files exist, parameter ranges).
void validate_config(const RunConfig &config);

/// Sorted key=value listing of every field that affects results (not output paths).
std::string canonical_config(const RunConfig &config);
/// FNV-1a 64 of canonical_config, as 16 hex digits.
std::string config_hash(const RunConfig &config);

/// honest | conjugated | werner:P | classical:FILE. The classical file uses the same
/// key = value syntax with keys alice (3 values), bob (6), bob_bell (0..3), charlie (2).
DeviceStrategy make_strategy(const std::string &spec);

/// Members separated by ';', each "prior@state". A state is either "omega,theta" in
/// radians (one qubit) or a string over {0, 1, +, -, R, L}, one character per qubit.
Ensemble parse_ensemble(const std::string &spec);

/// Header: one x_<party> column per party, one a_<party> per party, count, config_hash, seed.
void write_counts_csv(std::ostream &out, const CountsTable &counts, const std::string &hash);
/// Inverse of write_counts_csv. Alphabets are rebuilt from the rows, shots from the sums.
CountsTable read_counts_csv(std::istream &in);

/// Executes the configured command, writing artifacts and a transcript to `log`.
/// Returns an ExitCode. Library errors are mapped to their exit category.
int run(const RunConfig &config, std::ostream &log);

}  // namespace dqsd::cli

#endif  // DQSD_CLI_H
