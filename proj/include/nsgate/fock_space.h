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

#ifndef NSGATE_FOCK_SPACE_H
#define NSGATE_FOCK_SPACE_H

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nsgate/povm.h"

//
// Truncated multimode Fock space.
//
// Modes are indexed from 0. Every mode is truncated at the same cutoff (the
// largest photon number kept per mode). Basis states are ordered
// lexicographically over their occupation tuples with mode 0 most
// significant, which is also the iteration order of PureState.
//
// Truncation is exact whenever the total photon number of a state never
// exceeds the cutoff, because every operation in this library conserves
// total photon number. The NS pipeline carries at most three photons (two in
// the signal mode, one ancilla), so its default cutoff of 3 loses nothing.
//
// Sub-normalized states are first class: a post-selected state keeps its
// squared norm as the success probability, and normalization only happens
// when normalize() is called.
//

namespace nsgate {

using Complex = std::complex<double>;

class FockBasisState {
   public:
    FockBasisState() = default;
    explicit FockBasisState(std::vector<int> occupations);
    FockBasisState(std::initializer_list<int> occupations)
        : FockBasisState(std::vector<int>(occupations)) {}

    int mode_count() const {
        return static_cast<int>(occupations_.size());
    }
    int operator[](int mode) const {
        return occupations_[mode];
    }
    const std::vector<int>& occupations() const {
        return occupations_;
    }
    int total_photons() const;
    int max_occupation() const;

    /// Occupations of *this followed by those of other.
    FockBasisState concat(const FockBasisState& other) const;
    FockBasisState with_occupation(int mode, int n) const;

    std::string str() const;

    auto operator<=>(const FockBasisState&) const = default;

   private:
    std::vector<int> occupations_;
};

class PureState {
   public:
    using AmplitudeMap = std::map<FockBasisState, Complex>;

    /// Validates mode count, cutoff and normalization bound. Explicit zero
    /// amplitudes are dropped.
    PureState(int mode_count, int cutoff, AmplitudeMap amplitudes);

    static PureState fock(const FockBasisState& basis, int cutoff);
    /// Single-mode state sum_n amplitudes[n] |n>.
    static PureState single_mode(std::span<const Complex> amplitudes, int cutoff);
    static PureState single_mode(std::initializer_list<Complex> amplitudes, int cutoff);

    int mode_count() const {
        return mode_count_;
    }
    int cutoff() const {
        return cutoff_;
    }
    const AmplitudeMap& amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(const FockBasisState& basis) const;
    /// Single-mode shortcut for amplitude({n}).
    Complex amplitude(int n) const;

    double squared_norm() const;
    /// Largest total photon number carried by any nonzero amplitude.
    int max_total_photons() const;
    /// Single-mode amplitudes as a dense vector of length cutoff+1.
    Eigen::VectorXcd to_vector() const;

    /// Same amplitudes under a different per-mode cutoff. Throws if an
    /// occupied basis state would be truncated.
    PureState with_cutoff(int cutoff) const;
    PureState scaled(Complex factor) const;

   private:
    int mode_count_;
    int cutoff_;
    AmplitudeMap amplitudes_;
};

class DensityOperator {
   public:
    static constexpr double kHermiticityTolerance = 1e-12;
    static constexpr double kEigenvalueTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;

    /// Validates shape, Hermiticity, positivity and trace bound.
    DensityOperator(int cutoff, Eigen::MatrixXcd matrix);

    int cutoff() const {
        return cutoff_;
    }
    int dimension() const {
        return cutoff_ + 1;
    }
    const Eigen::MatrixXcd& matrix() const {
        return matrix_;
    }
    Complex operator()(int row, int col) const {
        return matrix_(row, col);
    }
    double trace() const;
    double min_eigenvalue() const;
    /// rho / trace(rho). Throws on zero trace.
    DensityOperator normalized() const;

   private:
    int cutoff_;
    Eigen::MatrixXcd matrix_;
};

struct NormalizedState {
    PureState state;
    double norm;
};

/// Concatenates the modes of a and b. Cutoffs must agree.
PureState tensor(const PureState& a, const PureState& b);

/// Returns the unit-norm state and the original Euclidean norm.
NormalizedState normalize(const PureState& s);

/// |s><s| for a single-mode state; its trace is the squared norm of s.
DensityOperator outer(const PureState& s);

/// <psi|rho|psi>. Cutoffs must agree and psi must be single-mode.
double expectation(const DensityOperator& rho, const PureState& psi);

struct MeasurementAssignment {
    int mode;
    PovmElement element;
};

/// Conditions a multimode pure state on diagonal POVM outcomes on all but one
/// mode and returns the unnormalized reduced operator on the remaining mode:
///
///     rho[k][k'] = sum_{occ} prod_m w_m(occ_m) c(occ, k) conj(c(occ, k'))
///
/// Its trace is the probability of the outcome record. The result is
/// symmetrized as (rho + rho^dagger)/2 after checking that the raw deviation
/// is within DensityOperator::kHermiticityTolerance.
DensityOperator condition_on_diagonal_povm(const PureState& s,
                                           std::span<const MeasurementAssignment> assignments);

}  // namespace nsgate

#endif
