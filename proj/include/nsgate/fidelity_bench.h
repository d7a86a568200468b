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

#ifndef NSGATE_FIDELITY_BENCH_H
#define NSGATE_FIDELITY_BENCH_H

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "nsgate/detector_models.h"
#include "nsgate/fock_space.h"
#include "nsgate/ns_gate.h"

namespace nsgate {

/// alpha = cos(theta1), beta = sin(theta1) cos(theta2) e^{i phi_beta},
/// gamma = sin(theta1) sin(theta2) e^{i phi_gamma}. Global phase is fixed by
/// alpha real and nonnegative; theta1, theta2 range over [0, pi/2].
struct InputStateParam {
    double theta1 = 0;
    double theta2 = 0;
    double phi_beta = 0;
    double phi_gamma = 0;

    std::array<Complex, 3> amplitudes() const;
    PureState to_state(int cutoff = 2) const;

    static InputStateParam vacuum() {
        return {};
    }
    static InputStateParam one_photon();
    static InputStateParam two_photon();
};

/// sqrt(<t|rho-bar'|t> / Tr rho-bar') for a normalized target t. Throws
/// UndefinedFidelityError when the output has zero success probability.
double fidelity(const PureState& target, const ConditionalOutput& out);

/// Fidelity of the NS output for input psi against normalize(ns_ideal(psi)).
double ns_fidelity(const NsGateConfig& config, const PureState& psi);

/// sqrt(1 - 2 x + 2 x^2), the fidelity of the linear phase shift
/// exp(i pi/2 n) against the NS target for |beta|^2 = x.
double lp_fidelity(double beta_sq);

struct LpGateFidelity {
    double value;
    double beta_sq;
};

/// Minimum of lp_fidelity over beta_sq in [0, 1], by golden-section search.
LpGateFidelity lp_gate_fidelity();

/// Worst case over input populations of |<psi_target | exp(i phi n) psi>|,
/// where psi_target is the ideal NS output. Populations are sampled on a
/// simplex lattice with `grid` divisions per axis and the phase of the
/// shifted state is taken from phase_shift().
double phase_shift_worst_case_fidelity(double phi, int grid = 200);

struct MinimizerOptions {
    int grid_points = 20;
    double parameter_tolerance = 1e-6;
    /// Number of best coarse-lattice points refined locally.
    int refine_starts = 4;
};

struct GateFidelityResult {
    double value = 0;
    InputStateParam minimizer;
    DetectorModel detector;
    /// Fidelities of |0>, |1>, |2>, always evaluated explicitly.
    std::array<double, 3> fock_fidelities{};
    /// n if the minimizer is |n> (population >= 1 - 1e-8), else -1.
    int minimizer_fock = -1;
    /// The search found a value below every Fock-state fidelity by more than
    /// 1e-8, contradicting the Fock-minimizer claim.
    bool non_fock_violation = false;
    double success_at_minimizer = 0;
    double success_at_one = 0;

    double best_fock_fidelity() const;
};

/// min over input states of the fidelity, by a coarse lattice over all four
/// parameters followed by coordinate descent with a shrinking step. Throws
/// UndefinedFidelityError for zero-efficiency detectors.
GateFidelityResult gate_fidelity(const NsGateConfig& config, const MinimizerOptions& options = {});
GateFidelityResult gate_fidelity(const DetectorModel& detector, const MinimizerOptions& options = {});

/// Bisection for fidelity_of_eta(eta) = target on (0, 1], to tolerance in
/// eta. Throws NoCrossingError when fidelity_of_eta(eta_floor) and
/// fidelity_of_eta(1) fall on the same side of the target.
double threshold_efficiency(const std::function<double(double)>& fidelity_of_eta, double target, double tol = 1e-4,
                            double eta_floor = 1e-3);

/// Crossing of the scheme's gate fidelity with the linear-optics benchmark
/// 1/sqrt(2).
double threshold_efficiency(const DetectorScheme& scheme, double tol = 1e-4);

struct SweepPoint {
    double eta;
    GateFidelityResult result;
};

/// Gate fidelity on every grid point. Points are distributed over `threads`
/// workers (0 means hardware concurrency) and returned in grid order.
std::vector<SweepPoint> sweep(const DetectorScheme& scheme, std::span<const double> eta_grid, int threads = 0,
                              const MinimizerOptions& options = {});

}  // namespace nsgate

#endif
