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

#ifndef NSGATE_DETECTOR_MODELS_H
#define NSGATE_DETECTOR_MODELS_H

#include <string>
#include <string_view>

#include "nsgate/povm.h"

namespace nsgate {

// Photon-counting POVMs. All of them are diagonal in photon number, and eta
// is the probability that a detector registers a one-photon Fock input.

/// Pi_k = |k><k| for k = 0..cutoff.
Povm ideal_povm(int cutoff);

/// {Pi_0, Pi_>0} with Pi_0(n) = (1-eta)^n.
Povm threshold_povm(double eta, int cutoff);

/// Double detector array: 50/50 split onto two threshold detectors.
/// Elements {none, one, both}; "one" does not say which detector fired.
Povm dda_povm(double eta, int cutoff);

/// Binomial photon counter, Pi_k(n) = C(n,k) eta^k (1-eta)^(n-k).
Povm vlpc_povm(double eta, int cutoff);

/// Equal split of the input over n_detectors threshold detectors. Element k
/// is the probability that exactly k detectors click, k = 0..min(N, cutoff).
/// Each photon independently is lost (1-eta) or registered in a uniformly
/// random detector (eta/N); the single-input-mode bosonic multiport gives the
/// same multinomial statistics.
///
/// Dispatches to cascade_povm_enumerated while the photon-to-bin multiset
/// count stays below kCascadeEnumerationLimit and to cascade_povm_closed_form
/// otherwise.
Povm cascade_povm(int n_detectors, double eta, int cutoff);

inline constexpr long long kCascadeEnumerationLimit = 2'000'000;

/// Exact enumeration of photon -> {lost, detector 1..N} multisets with
/// multinomial weights.
Povm cascade_povm_enumerated(int n_detectors, double eta, int cutoff);

/// Inclusion-exclusion over the set of clicked detectors,
///
///     P(k | n) = C(N,k) sum_j (-1)^j C(k,j) ((1-eta) + eta (k-j)/N)^n,
///
/// evaluated after expanding the power binomially so the alternating sum
/// collapses to a Stirling number of the second kind:
///
///     P(k | n) = sum_d C(n,d) (1-eta)^(n-d) eta^d S(d,k) N!/(N-k)! / N^d.
///
/// Every term is nonnegative, so large N carries no cancellation.
Povm cascade_povm_closed_form(int n_detectors, double eta, int cutoff);

/// max_n |1 - sum_e weight_e(n)| over n = 0..cutoff.
double completeness_defect(const Povm& povm, int cutoff);

enum class DetectorKind { kIdeal, kThreshold, kDda, kCascade, kVlpc };

struct DetectorModel {
    DetectorKind kind = DetectorKind::kIdeal;
    double eta = 1.0;
    int cascade_n = 0;

    static DetectorModel ideal() {
        return {DetectorKind::kIdeal, 1.0, 0};
    }
    static DetectorModel threshold(double eta) {
        return {DetectorKind::kThreshold, eta, 0};
    }
    static DetectorModel dda(double eta) {
        return {DetectorKind::kDda, eta, 0};
    }
    static DetectorModel vlpc(double eta) {
        return {DetectorKind::kVlpc, eta, 0};
    }
    static DetectorModel cascade(int n, double eta) {
        return {DetectorKind::kCascade, eta, n};
    }

    /// Throws std::invalid_argument for eta outside [0,1] or cascade N < 1.
    void validate() const;

    bool operator==(const DetectorModel&) const = default;
};

/// Full POVM of a model (ideal ignores eta).
Povm make_povm(const DetectorModel& model, int cutoff);

/// The element reporting no photons / exactly one photon. For threshold
/// detectors "one" is Pi_>0 since that is the only firing outcome.
PovmElement zero_click_element(const DetectorModel& model, int cutoff);
PovmElement one_click_element(const DetectorModel& model, int cutoff);

/// A detector family with efficiency left open: "ideal", "threshold", "dda",
/// "vlpc" or "cascade:N".
struct DetectorScheme {
    DetectorKind kind = DetectorKind::kDda;
    int cascade_n = 0;

    DetectorModel at(double eta) const {
        return {kind, kind == DetectorKind::kIdeal ? 1.0 : eta, cascade_n};
    }
    std::string name() const;
    /// Throws std::invalid_argument on an unknown name.
    static DetectorScheme parse(std::string_view text);

    bool operator==(const DetectorScheme&) const = default;
};

}  // namespace nsgate

#endif
