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

#ifndef DQSD_ERRORS_H
#define DQSD_ERRORS_H

#include <stdexcept>
#include <string>

namespace dqsd {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Out-of-range label, mismatched dimensions, missing inputs.
struct ArgumentError : Error {
    using Error::Error;
};

/// A value that should be a density matrix, POVM or normalized table is not.
struct ValidationError : Error {
    using Error::Error;
};

/// Conditioning on an event that has zero probability (or zero counts).
struct ConditioningError : Error {
    using Error::Error;
};

/// A requested size exceeds the configured simulation cap.
struct ResourceError : Error {
    using Error::Error;
};

/// Two ensemble members that were required to differ are identical.
struct DegenerateEnsembleError : Error {
    using Error::Error;
};

/// The data cannot separate the candidates with the required statistical margin.
struct InconclusiveError : Error {
    using Error::Error;
};

/// The decision needs the sign of the third Pauli observable, but no trusted probe result was given.
struct MdiRequiredError : Error {
    using Error::Error;
};

/// Discrimination was attempted with devices that failed certification.
struct UncertifiedDevicesError : Error {
    using Error::Error;
};

}  // namespace dqsd

#endif  // DQSD_ERRORS_H
