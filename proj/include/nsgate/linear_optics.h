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

#ifndef NSGATE_LINEAR_OPTICS_H
#define NSGATE_LINEAR_OPTICS_H

#include <array>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nsgate/fock_space.h"

namespace nsgate {

/// Which input port's reflection picks up the pi phase. With kPortA the
/// element is exp(theta (a^dag b - a b^dag)), theta = arcsin(sqrt(r)), so
///
///     a^dag -> sqrt(1-r) a^dag - sqrt(r) b^dag
///     b^dag -> sqrt(1-r) b^dag + sqrt(r) a^dag
///
/// and kPortB is the same element with the roles of a and b exchanged.
enum class SignSurface { kPortA, kPortB };

struct BeamsplitterSpec {
    int mode_a = 0;
    int mode_b = 1;
    /// Intensity reflectivity in [0, 1].
    double reflectivity = 0.5;
    SignSurface sign_surface = SignSurface::kPortA;
};

struct PhaseShiftSpec {
    int mode = 0;
    double phi = 0.0;
};

using CircuitElement = std::variant<BeamsplitterSpec, PhaseShiftSpec>;

/// Elements applied in order, first element first.
struct CircuitSpec {
    int mode_count = 0;
    std::vector<CircuitElement> elements;
};

/// Beamsplitter on the two-mode space truncated at cutoff, basis index
/// n_a * (cutoff + 1) + n_b. Exact on every total-photon sector N <= cutoff
/// and unitary on the whole truncated space.
Eigen::MatrixXcd beamsplitter_matrix(const BeamsplitterSpec& spec, int cutoff);

/// exp(m) by scaling and squaring around a Taylor series whose terms are
/// summed until their max-norm drops below 1e-16.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m);

/// Throws std::invalid_argument on mode-count mismatch, bad element indices,
/// or if the state carries more photons than the cutoff can represent exactly.
PureState apply_circuit(const CircuitSpec& circuit, const PureState& s);

/// Multiplies the amplitude of occupation n on mode by exp(i phi n).
PureState phase_shift(const PureState& s, int mode, double phi);

/// Multiplies the amplitude of occupation n on mode by exp(i chi_t n(n-1)/2),
/// the action of exp(i (chi/2) a^dag^2 a^2 t) with chi_t = chi * t.
PureState kerr_evolve(const PureState& s, int mode, double chi_t);

// The three-beamsplitter NS network. Mode 0 is the signal, mode 1 the
// single-photon ancilla, mode 2 the vacuum ancilla and output.

struct Reflectivities {
    double r1 = 0;
    double r2 = 0;
    double r3 = 0;

    /// r1 = r3 = 1/(4 - 2 sqrt 2), r2 = (sqrt 2 - 1)^2.
    static Reflectivities design();
    bool is_design(double tol = 1e-12) const;
    void validate() const;
};

/// Mode pairing and sign surface of each of the three beamsplitters, in
/// application order.
struct NetworkConvention {
    std::array<std::pair<int, int>, 3> modes;
    std::array<SignSurface, 3> signs;

    bool operator==(const NetworkConvention&) const = default;
};

CircuitSpec ns_network(const NetworkConvention& convention, const Reflectivities& r);

/// Amplitude of output basis state `output` for input |m, 1, 0> with
/// m = output.total_photons() - 1.
struct AmplitudeTarget {
    Reflectivities reflectivities;
    FockBasisState output;
    Complex value;
};

/// c_010 = c_011 = 1/2, c_012 = -1/2, c_110 = 0 at the design point.
std::vector<AmplitudeTarget> anchor_targets();

/// Candidate conventions. The first entry pairs the elements as (1,2),
/// (0,1), (1,2) with the sign surface on the first port; the rest of the
/// family covers every pairing drawn from {(0,1), (0,2), (1,2)} per element
/// with both surface choices, 216 conventions in all.
std::vector<NetworkConvention> convention_family();

/// First member of convention_family() meeting every target within tol.
/// Throws CalibrationError when none does.
NetworkConvention calibrate_convention(std::span<const AmplitudeTarget> targets, double tol = 1e-10);

/// Largest |simulated - target| over the targets under one convention.
double convention_error(const NetworkConvention& convention, std::span<const AmplitudeTarget> targets);

}  // namespace nsgate

#endif
