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

#include "nsgate/linear_optics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nsgate/errors.h"

namespace nsgate {

namespace {

int two_mode_index(int n_a, int n_b, int cutoff) {
    return n_a * (cutoff + 1) + n_b;
}

void check_mode(int mode, int mode_count) {
    if (mode < 0 || mode >= mode_count) {
        throw std::invalid_argument("circuit element mode " + std::to_string(mode) + " out of range");
    }
}

PureState apply_beamsplitter(const BeamsplitterSpec& bs, const PureState& s) {
    const int cutoff = s.cutoff();
    const Eigen::MatrixXcd u = beamsplitter_matrix(bs, cutoff);
    PureState::AmplitudeMap out;
    for (const auto& [basis, amp] : s.amplitudes()) {
        const int n_a = basis[bs.mode_a];
        const int n_b = basis[bs.mode_b];
        const int col = two_mode_index(n_a, n_b, cutoff);
        const int total = n_a + n_b;
        for (int m_b = 0; m_b <= total; ++m_b) {
            const int m_a = total - m_b;
            if (m_a > cutoff || m_b > cutoff) {
                continue;
            }
            Complex element = u(two_mode_index(m_a, m_b, cutoff), col);
            if (element == Complex{}) {
                continue;
            }
            out[basis.with_occupation(bs.mode_a, m_a).with_occupation(bs.mode_b, m_b)] += element * amp;
        }
    }
    return PureState(s.mode_count(), cutoff, std::move(out));
}

PureState apply_diagonal_phase(const PureState& s, int mode, auto phase_of_n) {
    check_mode(mode, s.mode_count());
    PureState::AmplitudeMap out;
    for (const auto& [basis, amp] : s.amplitudes()) {
        out.emplace(basis, amp * std::polar(1.0, phase_of_n(basis[mode])));
    }
    return PureState(s.mode_count(), s.cutoff(), std::move(out));
}

}  // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_exponential: matrix is not square");
    }
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Eigen::MatrixXcd scaled = m / std::ldexp(1.0, squarings);

    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd term = result;
    for (int k = 1; k < 64; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-16) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

Eigen::MatrixXcd beamsplitter_matrix(const BeamsplitterSpec& spec, int cutoff) {
    if (!(spec.reflectivity >= 0.0 && spec.reflectivity <= 1.0)) {
        throw std::invalid_argument("beamsplitter reflectivity must lie in [0, 1]");
    }
    if (spec.mode_a == spec.mode_b) {
        throw std::invalid_argument("beamsplitter needs two distinct modes");
    }
    if (cutoff < 0) {
        throw std::invalid_argument("negative cutoff");
    }
    const double theta = std::asin(std::sqrt(spec.reflectivity));
    const double sign = spec.sign_surface == SignSurface::kPortA ? 1.0 : -1.0;
    const int dim = (cutoff + 1) * (cutoff + 1);

    // theta (a^dag b - a b^dag), anti-Hermitian and block-diagonal in n_a + n_b.
    Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n_a = 0; n_a <= cutoff; ++n_a) {
        for (int n_b = 0; n_b <= cutoff; ++n_b) {
            const int col = two_mode_index(n_a, n_b, cutoff);
            if (n_a + 1 <= cutoff && n_b >= 1) {
                generator(two_mode_index(n_a + 1, n_b - 1, cutoff), col) += std::sqrt((n_a + 1.0) * n_b);
            }
            if (n_a >= 1 && n_b + 1 <= cutoff) {
                generator(two_mode_index(n_a - 1, n_b + 1, cutoff), col) -= std::sqrt(n_a * (n_b + 1.0));
            }
        }
    }
    return matrix_exponential(sign * theta * generator);
}

PureState apply_circuit(const CircuitSpec& circuit, const PureState& s) {
    if (circuit.mode_count != s.mode_count()) {
        throw std::invalid_argument("apply_circuit: mode-count mismatch");
    }
    if (s.max_total_photons() > s.cutoff()) {
        throw std::invalid_argument("apply_circuit: state carries more photons than the cutoff represents exactly");
    }
    PureState current = s;
    for (const auto& element : circuit.elements) {
        if (const auto* bs = std::get_if<BeamsplitterSpec>(&element)) {
            check_mode(bs->mode_a, circuit.mode_count);
            check_mode(bs->mode_b, circuit.mode_count);
            current = apply_beamsplitter(*bs, current);
        } else {
            const auto& ps = std::get<PhaseShiftSpec>(element);
            current = phase_shift(current, ps.mode, ps.phi);
        }
    }
    return current;
}

PureState phase_shift(const PureState& s, int mode, double phi) {
    return apply_diagonal_phase(s, mode, [phi](int n) { return phi * n; });
}

PureState kerr_evolve(const PureState& s, int mode, double chi_t) {
    return apply_diagonal_phase(s, mode, [chi_t](int n) { return chi_t * n * (n - 1) / 2.0; });
}

Reflectivities Reflectivities::design() {
    const double outer = 1.0 / (4.0 - 2.0 * std::numbers::sqrt2);
    const double middle = (std::numbers::sqrt2 - 1.0) * (std::numbers::sqrt2 - 1.0);
    return {outer, middle, outer};
}

bool Reflectivities::is_design(double tol) const {
    const Reflectivities d = design();
    return std::abs(r1 - d.r1) <= tol && std::abs(r2 - d.r2) <= tol && std::abs(r3 - d.r3) <= tol;
}

void Reflectivities::validate() const {
    for (double r : {r1, r2, r3}) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw std::invalid_argument("reflectivity must lie in [0, 1]");
        }
    }
}

CircuitSpec ns_network(const NetworkConvention& convention, const Reflectivities& r) {
    r.validate();
    const std::array<double, 3> values{r.r1, r.r2, r.r3};
    CircuitSpec circuit{3, {}};
    for (int i = 0; i < 3; ++i) {
        circuit.elements.push_back(
            BeamsplitterSpec{convention.modes[i].first, convention.modes[i].second, values[i], convention.signs[i]});
    }
    return circuit;
}

std::vector<AmplitudeTarget> anchor_targets() {
    const Reflectivities d = Reflectivities::design();
    return {
        {d, FockBasisState{0, 1, 0}, Complex{0.5}},
        {d, FockBasisState{0, 1, 1}, Complex{0.5}},
        {d, FockBasisState{0, 1, 2}, Complex{-0.5}},
        {d, FockBasisState{1, 1, 0}, Complex{0.0}},
    };
}

std::vector<NetworkConvention> convention_family() {
    const NetworkConvention first{{{{1, 2}, {0, 1}, {1, 2}}},
                                           {{SignSurface::kPortA, SignSurface::kPortA, SignSurface::kPortA}}};
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    const std::array<SignSurface, 2> signs{SignSurface::kPortA, SignSurface::kPortB};

    std::vector<NetworkConvention> family{first};
    for (const auto& p1 : pairs) {
        for (const auto& p2 : pairs) {
            for (const auto& p3 : pairs) {
                for (auto s1 : signs) {
                    for (auto s2 : signs) {
                        for (auto s3 : signs) {
                            NetworkConvention c{{{p1, p2, p3}}, {{s1, s2, s3}}};
                            if (!(c == first)) {
                                family.push_back(c);
                            }
                        }
                    }
                }
            }
        }
    }
    return family;
}

double convention_error(const NetworkConvention& convention, std::span<const AmplitudeTarget> targets) {
    double worst = 0.0;
    // Targets sharing reflectivities and input reuse one simulation.
    const Reflectivities* last_r = nullptr;
    int last_input = -1;
    PureState last_output = PureState::fock(FockBasisState{0, 0, 0}, 3);
    for (const auto& t : targets) {
        if (t.output.mode_count() != 3 || t.output.total_photons() < 1 || t.output.total_photons() > 3) {
            throw std::invalid_argument("amplitude target must be a three-mode state with 1..3 photons");
        }
        const int input = t.output.total_photons() - 1;
        const bool same_r = last_r != nullptr && last_r->r1 == t.reflectivities.r1 &&
                            last_r->r2 == t.reflectivities.r2 && last_r->r3 == t.reflectivities.r3;
        if (!same_r || input != last_input) {
            const CircuitSpec circuit = ns_network(convention, t.reflectivities);
            last_output = apply_circuit(circuit, PureState::fock(FockBasisState{input, 1, 0}, 3));
            last_r = &t.reflectivities;
            last_input = input;
        }
        worst = std::max(worst, std::abs(last_output.amplitude(t.output) - t.value));
    }
    return worst;
}

NetworkConvention calibrate_convention(std::span<const AmplitudeTarget> targets, double tol) {
    if (targets.empty()) {
        throw std::invalid_argument("calibrate_convention: no targets");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& convention : convention_family()) {
        const double err = convention_error(convention, targets);
        if (err <= tol) {
            return convention;
        }
        best = std::min(best, err);
    }
    throw CalibrationError("no beamsplitter convention reproduces the amplitude targets (best residual " +
                           std::to_string(best) + ")");
}

}  // namespace nsgate
