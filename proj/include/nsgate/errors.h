// Copyright 2026 The nsgate Authors
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

#ifndef NSGATE_ERRORS_H
#define NSGATE_ERRORS_H

#include <stdexcept>
#include <string>

namespace nsgate {

/// Raised when a numerical procedure cannot produce a result (calibration
/// search exhausted, root bracket without a sign change). Distinct from
/// std::invalid_argument, which signals a caller precondition violation.
class NumericalFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class CalibrationError : public NumericalFailure {
   public:
    using NumericalFailure::NumericalFailure;
};

class NoCrossingError : public NumericalFailure {
   public:
    using NumericalFailure::NumericalFailure;
};

/// Fidelity of a conditional output with zero apparent-success probability.
class UndefinedFidelityError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace nsgate

#endif
