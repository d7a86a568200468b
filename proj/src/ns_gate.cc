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

#include "nsgate/ns_gate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsgate/errors.h"

namespace nsgate {

namespace {

constexpr double kInputNormTolerance = 1e-10;

// alpha, beta, gamma of a single-mode input supported on n <= 2.
std::array<Complex, 3> signal_amplitudes(const PureState& psi) {
    if (psi.mode_count() != 1) {
        throw std::invalid_argument("NS gate input must be a single-mode state");
    }
    for (const auto& [basis, amp] : psi.amplitudes()) {
        if (basis[0] > 2) {
            throw std::invalid_argument("NS gate input has support beyond n = 2");
        }
    }
    return {psi.amplitude(0), psi.amplitude(1), psi.amplitude(2)};
}

void require_normalized(const PureState& psi) {
    if (std::abs(psi.squared_norm() - 1.0) > kInputNormTolerance) {
        throw std::invalid_argument("closed-form NS output expects a normalized input");
    }
}

Eigen::VectorXcd padded(std::initializer_list<Complex> head, int dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    int i = 0;
    for (Complex c : head) {
        v(i++) = c;
    }
    return v;
}

struct DesignAmplitudes {
    Complex c010, c011, c012, c111, c020, c021, c210, c120, c030;
};

DesignAmplitudes design_amplitudes() {
    const AmplitudeTable t = closed_form_amplitudes(Reflectivities::design());
    return {t.at(0, 1, 0), t.at(0, 1, 1), t.at(0, 1, 2), t.at(1, 1, 1), t.at(0, 2, 0),
            t.at(0, 2, 1), t.at(2, 1, 0), t.at(1, 2, 0), t.at(0, 3, 0)};
}

Scheme require_closed_form_scheme(const NsGateConfig& config) {
    auto scheme = closed_form_scheme(config);
    if (!scheme) {
        throw std::invalid_argument(
            "closed-form NS output needs both detectors dda or both vlpc with a shared efficiency");
    }
    if (!config.reflectivities.is_design()) {
        throw std::invalid_argument(
            "closed-form NS output only holds at the design reflectivities; use the simulated pipeline");
    }
    return *scheme;
}

}  // namespace

AmplitudeTable::AmplitudeTable(Map entries) : entries_(std::move(entries)) {
    for (const auto& [basis, amp] : entries_) {
        if (basis.mode_count() != 3) {
            throw std::invalid_argument("AmplitudeTable: entries are indexed by three-mode occupations");
        }
    }
}

std::optional<Complex> AmplitudeTable::find(int i, int j, int k) const {
    auto it = entries_.find(FockBasisState{i, j, k});
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Complex AmplitudeTable::at(int i, int j, int k) const {
    auto c = find(i, j, k);
    if (!c) {
        throw std::out_of_range("AmplitudeTable: c_" + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                                " not populated");
    }
    return *c;
}

double AmplitudeTable::sector_norm(int total_photons) const {
    double total = 0.0;
    for (const auto& [basis, amp] : entries_) {
        if (basis.total_photons() == total_photons) {
            total += std::norm(amp);
        }
    }
    return total;
}

void NsGateConfig::validate() const {
    reflectivities.validate();
    detector_d1.validate();
    detector_d2.validate();
    if (cutoff < 1) {
        throw std::invalid_argument("NS gate cutoff must be at least 1");
    }
}

ConditionalOutput ConditionalOutput::from_unnormalized(DensityOperator rho) {
    const double p = rho.trace();
    std::optional<DensityOperator> normalized;
    if (p > 0.0) {
        normalized = rho.normalized();
    }
    return {std::move(rho), p, std::move(normalized)};
}

PureState ns_ideal(const PureState& psi) {
    const auto [alpha, beta, gamma] = signal_amplitudes(psi);
    return PureState::single_mode({alpha / 2.0, beta / 2.0, -gamma / 2.0}, std::max(psi.cutoff(), 2));
}

AmplitudeTable closed_form_amplitudes(const Reflectivities& r) {
    r.validate();
    const double r1 = r.r1;
    const double r2 = r.r2;
    const double r3 = r.r3;
    using std::sqrt;

    const double c111 = -sqrt(2 * (1 - r1) * r2 * (1 - r2)) * (1 - 2 * r3) +
                        sqrt(2 * r1 * (1 - r2) * r3 * (1 - r3)) * (1 - 3 * r2);
    const double c020 = sqrt(2 * r1 * r2 * (1 - r2)) * r3 + sqrt(2 * (1 - r1) * (1 - r2) * r3 * (1 - r3));
    const double c021 = -2 * sqrt((1 - r1) * r2 * (1 - r2) * r3 * (1 - r3)) + sqrt(r1 * (1 - r2)) * (1 - 3 * r2) * r3;
    const double c210 = 3 * sqrt(r1 * r2 * r3) * (1 - r2) * (1 - r3) + sqrt((1 - r1) * (1 - r3)) * (1 - r2) * (1 - 3 * r3);
    const double c120 = 3 * sqrt(r1 * r2 * (1 - r3)) * (1 - r2) * r3 + sqrt((1 - r1) * r3) * (1 - r2) * (2 - 3 * r3);
    const double c030 = sqrt(3 * r1 * r2) * (1 - r2) * std::pow(sqrt(r3), 3) + sqrt(3 * (1 - r1) * (1 - r3)) * (1 - r2) * r3;

    AmplitudeTable::Map entries{
        {FockBasisState{1, 1, 1}, c111}, {FockBasisState{0, 2, 0}, c020}, {FockBasisState{0, 2, 1}, c021},
        {FockBasisState{2, 1, 0}, c210}, {FockBasisState{1, 2, 0}, c120}, {FockBasisState{0, 3, 0}, c030},
    };
    if (r.is_design()) {
        entries.emplace(FockBasisState{0, 1, 0}, 0.5);
        entries.emplace(FockBasisState{0, 1, 1}, 0.5);
        entries.emplace(FockBasisState{0, 1, 2}, -0.5);
        entries.emplace(FockBasisState{1, 1, 0}, 0.0);
    }
    return AmplitudeTable(std::move(entries));
}

std::vector<AmplitudeTarget> calibration_targets() {
    std::vector<AmplitudeTarget> targets = anchor_targets();
    const Reflectivities d = Reflectivities::design();
    const AmplitudeTable closed = closed_form_amplitudes(d);
    for (const auto& basis : {FockBasisState{1, 1, 1}, FockBasisState{0, 2, 0}, FockBasisState{0, 2, 1},
                              FockBasisState{2, 1, 0}, FockBasisState{1, 2, 0}, FockBasisState{0, 3, 0}}) {
        targets.push_back({d, basis, closed.at(basis[0], basis[1], basis[2])});
    }
    return targets;
}

const NetworkConvention& calibrated_convention() {
    static const NetworkConvention convention = [] {
        const auto targets = calibration_targets();
        return calibrate_convention(targets);
    }();
    return convention;
}

AmplitudeTable simulated_amplitudes(const Reflectivities& r) {
    const CircuitSpec circuit = ns_network(calibrated_convention(), r);
    AmplitudeTable::Map entries;
    for (int m = 0; m <= 2; ++m) {
        const PureState out = apply_circuit(circuit, PureState::fock(FockBasisState{m, 1, 0}, 3));
        // Report the complete sector, zeros included.
        const int total = m + 1;
        for (int i = 0; i <= total; ++i) {
            for (int j = 0; i + j <= total; ++j) {
                FockBasisState basis{i, j, total - i - j};
                entries.emplace(basis, out.amplitude(basis));
            }
        }
    }
    return AmplitudeTable(std::move(entries));
}

std::optional<Scheme> closed_form_scheme(const NsGateConfig& config) {
    const auto& a = config.detector_d1;
    const auto& b = config.detector_d2;
    if (a.eta != b.eta || a.kind != b.kind) {
        return std::nullopt;
    }
    if (a.kind == DetectorKind::kDda) {
        return Scheme::kDda;
    }
    if (a.kind == DetectorKind::kVlpc) {
        return Scheme::kVlpc;
    }
    return std::nullopt;
}

std::array<double, 6> conditional_state_weights(Scheme scheme, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("detector efficiency eta must lie in [0, 1]");
    }
    const double e = eta;
    const double miss = 1.0 - e;
    if (scheme == Scheme::kDda) {
        const double pair_one_click = 0.5 * e * e + 2.0 * e * miss;
        return {e,
                e * miss,
                pair_one_click,
                e * miss * miss,
                miss * pair_one_click,
                2.0 * (std::pow(1.0 - e / 2.0, 3) - std::pow(miss, 3))};
    }
    return {e, e * miss, 2.0 * e * miss, e * miss * miss, 2.0 * e * miss * miss, 3.0 * e * miss * miss};
}

ConditionalOutput conditional_output_closed_form(const NsGateConfig& config, const PureState& psi) {
    config.validate();
    const Scheme scheme = require_closed_form_scheme(config);
    const auto [alpha, beta, gamma] = signal_amplitudes(psi);
    require_normalized(psi);
    if (config.cutoff < 2) {
        throw std::invalid_argument("closed-form NS output needs cutoff >= 2");
    }
    const DesignAmplitudes c = design_amplitudes();
    const auto w = conditional_state_weights(scheme, config.detector_d1.eta);
    const int dim = config.cutoff + 1;

    const std::array<Eigen::VectorXcd, 6> terms{
        padded({alpha * c.c010, beta * c.c011, gamma * c.c012}, dim),  // psi'
        padded({0.0, gamma * c.c111}, dim),
        padded({beta * c.c020, gamma * c.c021}, dim),
        padded({gamma * c.c210}, dim),
        padded({gamma * c.c120}, dim),
        padded({gamma * c.c030}, dim),
    };
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t i = 0; i < terms.size(); ++i) {
        rho += w[i] * (terms[i] * terms[i].adjoint());
    }
    DensityOperator unnormalized(config.cutoff, (rho + rho.adjoint()) / 2.0);

    ConditionalOutput out = ConditionalOutput::from_unnormalized(std::move(unnormalized));
    const double analytic = closed_form_success_probability(scheme, config.detector_d1.eta, psi);
    if (std::abs(analytic - out.success_probability) > 1e-12) {
        throw std::logic_error("closed-form trace disagrees with the analytic success probability");
    }
    out.success_probability = analytic;
    return out;
}

double closed_form_success_probability(Scheme scheme, double eta, const PureState& psi) {
    const auto [alpha, beta, gamma] = signal_amplitudes(psi);
    require_normalized(psi);
    const DesignAmplitudes c = design_amplitudes();
    const auto w = conditional_state_weights(scheme, eta);
    return 0.25 * eta + w[1] * std::norm(gamma * c.c111) +
           w[2] * (std::norm(beta * c.c020) + std::norm(gamma * c.c021)) + w[3] * std::norm(gamma * c.c210) +
           w[4] * std::norm(gamma * c.c120) + w[5] * std::norm(gamma * c.c030);
}

double closed_form_target_overlap(Scheme scheme, double eta, const PureState& psi) {
    const auto [alpha, beta, gamma] = signal_amplitudes(psi);
    require_normalized(psi);
    const DesignAmplitudes c = design_amplitudes();
    const auto w = conditional_state_weights(scheme, eta);
    const Complex a = std::conj(alpha);
    const Complex b = std::conj(beta);
    return 0.25 * eta + w[1] * std::norm(b * gamma * c.c111) +
           w[2] * std::norm(a * beta * c.c020 + b * gamma * c.c021) + w[3] * std::norm(a * gamma * c.c210) +
           w[4] * std::norm(a * gamma * c.c120) + w[5] * std::norm(a * gamma * c.c030);
}

ConditionalOutput conditional_output_simulated(const NsGateConfig& config, const PureState& psi) {
    config.validate();
    signal_amplitudes(psi);
    const int cutoff = config.cutoff;
    const PureState input =
        tensor(tensor(psi.with_cutoff(cutoff), PureState::fock(FockBasisState{1}, cutoff)),
               PureState::fock(FockBasisState{0}, cutoff));
    const PureState out = apply_circuit(ns_network(calibrated_convention(), config.reflectivities), input);
    const std::array<MeasurementAssignment, 2> record{
        MeasurementAssignment{0, zero_click_element(config.detector_d1, cutoff)},
        MeasurementAssignment{1, one_click_element(config.detector_d2, cutoff)},
    };
    return ConditionalOutput::from_unnormalized(condition_on_diagonal_povm(out, record));
}

ConditionalChannel::ConditionalChannel(const NsGateConfig& config) : config_(config) {
    config_.validate();
    if (config_.cutoff < 3) {
        throw std::invalid_argument("ConditionalChannel needs cutoff >= 3 to carry |2>|1>|0>");
    }
    const int cutoff = config_.cutoff;
    const int dim = cutoff + 1;
    const CircuitSpec circuit = ns_network(calibrated_convention(), config_.reflectivities);
    const PovmElement zero = zero_click_element(config_.detector_d1, cutoff);
    const PovmElement one = one_click_element(config_.detector_d2, cutoff);

    std::map<std::pair<int, int>, Eigen::MatrixXcd> maps;
    for (int m = 0; m <= 2; ++m) {
        const PureState out = apply_circuit(circuit, PureState::fock(FockBasisState{m, 1, 0}, cutoff));
        for (const auto& [basis, amp] : out.amplitudes()) {
            auto [it, inserted] = maps.try_emplace({basis[0], basis[1]}, Eigen::MatrixXcd::Zero(dim, 3));
            it->second(basis[2], m) += amp;
        }
    }
    for (auto& [record, map] : maps) {
        const double w = zero.weight(record.first) * one.weight(record.second);
        if (w > 0.0) {
            records_.push_back({w, std::move(map)});
        }
    }
}

ConditionalOutput ConditionalChannel::output(std::span<const Complex, 3> input) const {
    const int dim = config_.cutoff + 1;
    const Eigen::Vector3cd v(input[0], input[1], input[2]);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& r : records_) {
        const Eigen::VectorXcd out = r.map * v;
        rho += r.weight * (out * out.adjoint());
    }
    return ConditionalOutput::from_unnormalized(DensityOperator(config_.cutoff, (rho + rho.adjoint()) / 2.0));
}

double ConditionalChannel::success_probability(std::span<const Complex, 3> input) const {
    const Eigen::Vector3cd v(input[0], input[1], input[2]);
    double total = 0.0;
    for (const auto& r : records_) {
        total += r.weight * (r.map * v).squaredNorm();
    }
    return total;
}

double ConditionalChannel::fidelity(std::span<const Complex, 3> input) const {
    const Eigen::Vector3cd v(input[0], input[1], input[2]);
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(config_.cutoff + 1);
    target.head<3>() << input[0], input[1], -input[2];
    const double target_norm = target.norm();
    if (!(target_norm > 0.0)) {
        throw std::invalid_argument("ConditionalChannel::fidelity: zero input");
    }
    target /= target_norm;

    double overlap = 0.0;
    double trace = 0.0;
    for (const auto& r : records_) {
        const Eigen::VectorXcd out = r.map * v;
        overlap += r.weight * std::norm(target.dot(out));
        trace += r.weight * out.squaredNorm();
    }
    if (!(trace > 0.0)) {
        throw UndefinedFidelityError("no apparent successes possible: fidelity undefined");
    }
    return std::sqrt(std::clamp(overlap / trace, 0.0, 1.0));
}

}  // namespace nsgate
