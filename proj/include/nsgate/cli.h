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

#ifndef NSGATE_CLI_H
#define NSGATE_CLI_H

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nsgate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct SweepRecord {
    std::string scheme;
    double eta = 0;
    double gate_fidelity = 0;
    double success_at_one = 0;
    double success_at_min = 0;
    /// theta1, theta2, phi_beta, phi_gamma of the fidelity minimizer.
    std::array<double, 4> minimizer_params{};

    bool operator==(const SweepRecord&) const = default;
};

/// Header `scheme,eta,gate_fidelity,success_at_one,success_at_min`, one row
/// per record, 12 significant digits, LF line endings.
std::string format_sweep_csv(std::span<const SweepRecord> records);

/// Inverse of format_sweep_csv; minimizer_params are not part of the CSV and
/// come back zero. Throws std::invalid_argument on malformed input.
std::vector<SweepRecord> parse_sweep_csv(std::string_view text);

/// JSON array of record objects with full double precision.
std::string format_sweep_json(std::span<const SweepRecord> records);

/// `nsgate {sweep|povm|amplitudes} [flags]`. args excludes the program name.
/// Returns kExitOk, kExitUsage or kExitNumerical.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nsgate

#endif
