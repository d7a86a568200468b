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

#include "nsgate/fock_space.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nsgate {

namespace {

constexpr double kNormTolerance = 1e-12;

}  // namespace

FockBasisState::FockBasisState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    for (int n : occupations_) {
        if (n < 0) {
            throw std::invalid_argument("FockBasisState: negative occupation");
        }
    }
}

int FockBasisState::total_photons() const {
    return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

int FockBasisState::max_occupation() const {
    return occupations_.empty() ? 0 : *std::max_element(occupations_.begin(), occupations_.end());
}

FockBasisState FockBasisState::concat(const FockBasisState& other) const {
    std::vector<int> occ = occupations_;
    occ.insert(occ.end(), other.occupations_.begin(), other.occupations_.end());
    return FockBasisState(std::move(occ));
}

FockBasisState FockBasisState::with_occupation(int mode, int n) const {
    std::vector<int> occ = occupations_;
    occ.at(mode) = n;
    return FockBasisState(std::move(occ));
}

std::string FockBasisState::str() const {
    std::ostringstream out;
    out << '|';
    for (size_t m = 0; m < occupations_.size(); ++m) {
        if (m) {
            out << ',';
        }
        out << occupations_[m];
    }
    out << '>';
    return out.str();
}

PureState::PureState(int mode_count, int cutoff, AmplitudeMap amplitudes)
    : mode_count_(mode_count), cutoff_(cutoff) {
    if (mode_count < 1) {
        throw std::invalid_argument("PureState: mode_count must be positive");
    }
    if (cutoff < 0) {
        throw std::invalid_argument("PureState: negative cutoff");
    }
    for (auto& [basis, amp] : amplitudes) {
        if (basis.mode_count() != mode_count) {
            throw std::invalid_argument("PureState: basis state " + basis.str() + " has wrong mode count");
        }
        if (basis.max_occupation() > cutoff) {
            throw std::invalid_argument("PureState: basis state " + basis.str() + " exceeds cutoff");
        }
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw std::invalid_argument("PureState: non-finite amplitude");
        }
        if (amp != Complex{}) {
            amplitudes_.emplace(basis, amp);
        }
    }
    if (squared_norm() > 1.0 + kNormTolerance) {
        throw std::invalid_argument("PureState: squared norm exceeds 1");
    }
}

PureState PureState::fock(const FockBasisState& basis, int cutoff) {
    return PureState(basis.mode_count(), cutoff, {{basis, Complex{1.0}}});
}

PureState PureState::single_mode(std::span<const Complex> amplitudes, int cutoff) {
    if (amplitudes.size() > static_cast<size_t>(cutoff) + 1) {
        throw std::invalid_argument("PureState::single_mode: more amplitudes than cutoff allows");
    }
    AmplitudeMap map;
    for (size_t n = 0; n < amplitudes.size(); ++n) {
        map.emplace(FockBasisState{static_cast<int>(n)}, amplitudes[n]);
    }
    return PureState(1, cutoff, std::move(map));
}

PureState PureState::single_mode(std::initializer_list<Complex> amplitudes, int cutoff) {
    return single_mode(std::span<const Complex>(amplitudes.begin(), amplitudes.size()), cutoff);
}

Complex PureState::amplitude(const FockBasisState& basis) const {
    auto it = amplitudes_.find(basis);
    return it == amplitudes_.end() ? Complex{} : it->second;
}

Complex PureState::amplitude(int n) const {
    return amplitude(FockBasisState{n});
}

double PureState::squared_norm() const {
    double total = 0;
    for (const auto& [basis, amp] : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

int PureState::max_total_photons() const {
    int result = 0;
    for (const auto& [basis, amp] : amplitudes_) {
        result = std::max(result, basis.total_photons());
    }
    return result;
}

Eigen::VectorXcd PureState::to_vector() const {
    if (mode_count_ != 1) {
        throw std::invalid_argument("PureState::to_vector: state is not single-mode");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff_ + 1);
    for (const auto& [basis, amp] : amplitudes_) {
        v(basis[0]) = amp;
    }
    return v;
}

PureState PureState::with_cutoff(int cutoff) const {
    return PureState(mode_count_, cutoff, amplitudes_);
}

PureState PureState::scaled(Complex factor) const {
    AmplitudeMap map;
    for (const auto& [basis, amp] : amplitudes_) {
        map.emplace(basis, amp * factor);
    }
    return PureState(mode_count_, cutoff_, std::move(map));
}

DensityOperator::DensityOperator(int cutoff, Eigen::MatrixXcd matrix) : cutoff_(cutoff), matrix_(std::move(matrix)) {
    if (cutoff < 0) {
        throw std::invalid_argument("DensityOperator: negative cutoff");
    }
    if (matrix_.rows() != cutoff + 1 || matrix_.cols() != cutoff + 1) {
        throw std::invalid_argument("DensityOperator: matrix dimension does not match cutoff");
    }
    double hermiticity = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (!(hermiticity <= kHermiticityTolerance)) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (min_eigenvalue() < -kEigenvalueTolerance) {
        throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
    }
    double tr = trace();
    if (tr < -kTraceTolerance || tr > 1.0 + kTraceTolerance) {
        throw std::invalid_argument("DensityOperator: trace outside [0, 1]");
    }
}

double DensityOperator::trace() const {
    return matrix_.diagonal().real().sum();
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityOperator DensityOperator::normalized() const {
    double tr = trace();
    if (!(tr > 0)) {
        throw std::domain_error("DensityOperator::normalized: zero trace");
    }
    return DensityOperator(cutoff_, matrix_ / tr);
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.cutoff() != b.cutoff()) {
        throw std::invalid_argument("tensor: cutoff mismatch");
    }
    PureState::AmplitudeMap map;
    for (const auto& [basis_a, amp_a] : a.amplitudes()) {
        for (const auto& [basis_b, amp_b] : b.amplitudes()) {
            map.emplace(basis_a.concat(basis_b), amp_a * amp_b);
        }
    }
    return PureState(a.mode_count() + b.mode_count(), a.cutoff(), std::move(map));
}

NormalizedState normalize(const PureState& s) {
    double norm = std::sqrt(s.squared_norm());
    if (!(norm > 0)) {
        throw std::invalid_argument("normalize: zero-norm state");
    }
    return {s.scaled(1.0 / norm), norm};
}

DensityOperator outer(const PureState& s) {
    if (s.mode_count() != 1) {
        throw std::invalid_argument("outer: state is not single-mode");
    }
    Eigen::VectorXcd v = s.to_vector();
    return DensityOperator(s.cutoff(), v * v.adjoint());
}

double expectation(const DensityOperator& rho, const PureState& psi) {
    if (psi.mode_count() != 1) {
        throw std::invalid_argument("expectation: state is not single-mode");
    }
    if (psi.cutoff() != rho.cutoff()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    Eigen::VectorXcd v = psi.to_vector();
    return v.dot(rho.matrix() * v).real();
}

DensityOperator condition_on_diagonal_povm(const PureState& s,
                                           std::span<const MeasurementAssignment> assignments) {
    const int modes = s.mode_count();
    if (modes < 2) {
        throw std::invalid_argument("condition_on_diagonal_povm: need at least two modes");
    }
    std::vector<const PovmElement*> element_of_mode(modes, nullptr);
    for (const auto& a : assignments) {
        if (a.mode < 0 || a.mode >= modes) {
            throw std::invalid_argument("condition_on_diagonal_povm: mode index out of range");
        }
        if (element_of_mode[a.mode] != nullptr) {
            throw std::invalid_argument("condition_on_diagonal_povm: mode measured twice");
        }
        if (a.element.cutoff() < s.cutoff()) {
            throw std::invalid_argument("condition_on_diagonal_povm: POVM element '" + a.element.label +
                                        "' does not cover the state cutoff");
        }
        for (double w : a.element.weights) {
            if (!(w >= 0.0 && w <= 1.0)) {
                throw std::invalid_argument("condition_on_diagonal_povm: POVM weight outside [0, 1]");
            }
        }
        element_of_mode[a.mode] = &a.element;
    }
    auto unmeasured = std::count(element_of_mode.begin(), element_of_mode.end(), nullptr);
    if (unmeasured != 1) {
        throw std::invalid_argument("condition_on_diagonal_povm: exactly one mode must remain unmeasured");
    }
    const int kept = static_cast<int>(std::find(element_of_mode.begin(), element_of_mode.end(), nullptr) -
                                      element_of_mode.begin());

    // Group amplitudes by the measured-mode record; each record contributes
    // w(record) |v><v| where v is the conditional vector on the kept mode.
    std::map<std::vector<int>, Eigen::VectorXcd> by_record;
    for (const auto& [basis, amp] : s.amplitudes()) {
        std::vector<int> record = basis.occupations();
        record[kept] = 0;
        auto [it, inserted] = by_record.try_emplace(record, Eigen::VectorXcd::Zero(s.cutoff() + 1));
        it->second(basis[kept]) += amp;
    }

    const int dim = s.cutoff() + 1;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [record, v] : by_record) {
        double w = 1.0;
        for (int m = 0; m < modes; ++m) {
            if (m != kept) {
                w *= element_of_mode[m]->weight(record[m]);
            }
        }
        if (w != 0.0) {
            rho += w * (v * v.adjoint());
        }
    }

    double deviation = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (deviation > DensityOperator::kHermiticityTolerance) {
        throw std::logic_error("condition_on_diagonal_povm: accumulated non-Hermiticity");
    }
    Eigen::MatrixXcd symmetric = (rho + rho.adjoint()) / 2.0;
    return DensityOperator(s.cutoff(), std::move(symmetric));
}

}  // namespace nsgate
