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

#ifndef NSGATE_NS_GATE_H
#define NSGATE_NS_GATE_H

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nsgate/detector_models.h"
#include "nsgate/fock_space.h"
#include "nsgate/linear_optics.h"

namespace nsgate {

/// c_ijk: amplitude of i, j, k photons leaving modes 0, 1, 2 when
/// |m>|1>|0> enters, with m = i + j + k - 1.
class AmplitudeTable {
   public:
    using Map = std::map<FockBasisState, Complex>;

    AmplitudeTable() = default;
    explicit AmplitudeTable(Map entries);

    const Map& entries() const {
        return entries_;
    }
    std::optional<Complex> find(int i, int j, int k) const;
    /// Throws std::out_of_range when the entry is not populated.
    Complex at(int i, int j, int k) const;
    /// Sum of |c_ijk|^2 over i + j + k = total_photons.
    double sector_norm(int total_photons) const;

   private:
    Map entries_;
};

/// Detector D1 watches mode 0 and must report zero photons; D2 watches mode 1
/// and must report one. Both share one efficiency unless set otherwise.
struct NsGateConfig {
    Reflectivities reflectivities = Reflectivities::design();
    DetectorModel detector_d1 = DetectorModel::ideal();
    DetectorModel detector_d2 = DetectorModel::ideal();
    /// Per-mode truncation; 3 is exact for the gate.
    int cutoff = 3;

    static NsGateConfig with_detectors(const DetectorModel& model) {
        NsGateConfig config;
        config.detector_d1 = model;
        config.detector_d2 = model;
        return config;
    }
    void validate() const;
};

struct ConditionalOutput {
    DensityOperator unnormalized;
    double success_probability;
    /// Absent when success_probability is zero: no apparent success can
    /// happen, and the normalized state is undefined rather than zero.
    std::optional<DensityOperator> normalized;

    bool has_success() const {
        return normalized.has_value();
    }

    static ConditionalOutput from_unnormalized(DensityOperator rho);
};

/// (alpha|0> + beta|1> - gamma|2>) / 2 for psi supported on n <= 2. The
/// squared norm of the result, 1/4 for normalized psi, is the ideal success
/// probability.
PureState ns_ideal(const PureState& psi);

/// The six analytic closed forms c_111, c_020, c_021, c_210, c_120, c_030 at
/// any reflectivities, plus c_010 = c_011 = 1/2, c_012 = -1/2, c_110 = 0 when
/// r equals the design point.
AmplitudeTable closed_form_amplitudes(const Reflectivities& r);

/// Anchor amplitudes plus the six closed forms, all at the design point.
std::vector<AmplitudeTarget> calibration_targets();

/// calibrate_convention(calibration_targets()), computed once.
const NetworkConvention& calibrated_convention();

/// Every c_ijk with 1 <= i + j + k <= 3 from simulating |m>|1>|0>, m = 0..2.
AmplitudeTable simulated_amplitudes(const Reflectivities& r);

enum class Scheme { kDda, kVlpc };

/// Both detectors dda (or both vlpc) with the same eta; nullopt otherwise.
std::optional<Scheme> closed_form_scheme(const NsGateConfig& config);

/// Coefficients of |psi'><psi'|, |phi_1><phi_1|, ..., |phi_5><phi_5| in the
/// unnormalized conditional state.
std::array<double, 6> conditional_state_weights(Scheme scheme, double eta);

/// Closed-form conditional state at the design reflectivities. Throws
/// std::invalid_argument for other reflectivities (use the simulated path),
/// mixed detector models, or psi support beyond n = 2.
ConditionalOutput conditional_output_closed_form(const NsGateConfig& config, const PureState& psi);

/// Analytic apparent-success expression Tr(rho-bar').
double closed_form_success_probability(Scheme scheme, double eta, const PureState& psi);

/// Analytic overlap <psi'|rho-bar'|psi'> with psi' = alpha|0> + beta|1> -
/// gamma|2> normalized.
double closed_form_target_overlap(Scheme scheme, double eta, const PureState& psi);

/// tensor(psi, |1>, |0>) -> NS network -> condition mode 0 on D1's zero-click
/// element and mode 1 on D2's one-click element.
ConditionalOutput conditional_output_simulated(const NsGateConfig& config, const PureState& psi);

/// The simulated pipeline factored through linearity: for every detection
/// record (i, j) it stores the outcome weight w1(i) w2(j) and the map K_ij
/// from input amplitudes (alpha, beta, gamma) to the conditional vector on
/// mode 2, so that rho-bar' = sum w K v v^dagger K^dagger.
class ConditionalChannel {
   public:
    explicit ConditionalChannel(const NsGateConfig& config);

    const NsGateConfig& config() const {
        return config_;
    }

    ConditionalOutput output(std::span<const Complex, 3> input) const;
    double success_probability(std::span<const Complex, 3> input) const;
    /// sqrt(<t|rho-bar'|t> / Tr rho-bar') with t the normalized ideal output.
    /// Throws UndefinedFidelityError at zero success probability.
    double fidelity(std::span<const Complex, 3> input) const;

   private:
    struct Record {
        double weight;
        Eigen::MatrixXcd map;
    };

    NsGateConfig config_;
    std::vector<Record> records_;
};

}  // namespace nsgate

#endif
