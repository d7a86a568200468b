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

#include "nsgate/detector_models.h"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace nsgate {

namespace {

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("detector efficiency eta must lie in [0, 1]");
    }
}

void check_cutoff(int cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("negative cutoff");
    }
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

// Rounding may push a probability a few ulps past [0, 1]; anything larger
// is left alone so the positivity checks still see it.
double clamp_unit(double w) {
    constexpr double kSlack = 1e-14;
    if (w < 0.0 && w > -kSlack) {
        return 0.0;
    }
    if (w > 1.0 && w < 1.0 + kSlack) {
        return 1.0;
    }
    return w;
}

std::vector<std::vector<double>> stirling_second_kind(int max_n) {
    std::vector<std::vector<double>> s(max_n + 1, std::vector<double>(max_n + 1, 0.0));
    s[0][0] = 1.0;
    for (int n = 1; n <= max_n; ++n) {
        for (int k = 1; k <= n; ++k) {
            s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
        }
    }
    return s;
}

Povm counting_elements(int count, int cutoff) {
    Povm povm;
    for (int k = 0; k < count; ++k) {
        povm.push_back({"k=" + std::to_string(k), std::vector<double>(cutoff + 1, 0.0)});
    }
    return povm;
}

}  // namespace

Povm ideal_povm(int cutoff) {
    check_cutoff(cutoff);
    Povm povm = counting_elements(cutoff + 1, cutoff);
    for (int k = 0; k <= cutoff; ++k) {
        povm[k].weights[k] = 1.0;
    }
    return povm;
}

Povm threshold_povm(double eta, int cutoff) {
    check_eta(eta);
    check_cutoff(cutoff);
    PovmElement off{"0", {}};
    PovmElement on{">0", {}};
    for (int n = 0; n <= cutoff; ++n) {
        double miss = std::pow(1.0 - eta, n);
        off.weights.push_back(miss);
        on.weights.push_back(clamp_unit(1.0 - miss));
    }
    return {off, on};
}

Povm dda_povm(double eta, int cutoff) {
    check_eta(eta);
    check_cutoff(cutoff);
    PovmElement none{"none", {}};
    PovmElement one{"one", {}};
    PovmElement both{"both", {}};
    for (int n = 0; n <= cutoff; ++n) {
        double miss_both = std::pow(1.0 - eta, n);
        double miss_one = std::pow(1.0 - eta / 2.0, n);
        none.weights.push_back(miss_both);
        one.weights.push_back(clamp_unit(2.0 * (miss_one - miss_both)));
        // Sum over d >= 2 registered photons of P(d) (1 - 2^(1-d)): no
        // cancellation, so n < 2 gives exactly zero.
        double fire_both = 0.0;
        for (int d = 2; d <= n; ++d) {
            fire_both += binomial(n, d) * std::pow(eta, d) * std::pow(1.0 - eta, n - d) * (1.0 - std::ldexp(1.0, 1 - d));
        }
        both.weights.push_back(clamp_unit(fire_both));
    }
    return {none, one, both};
}

Povm vlpc_povm(double eta, int cutoff) {
    check_eta(eta);
    check_cutoff(cutoff);
    Povm povm = counting_elements(cutoff + 1, cutoff);
    for (int k = 0; k <= cutoff; ++k) {
        for (int n = k; n <= cutoff; ++n) {
            povm[k].weights[n] = binomial(n, k) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
        }
    }
    return povm;
}

Povm cascade_povm(int n_detectors, double eta, int cutoff) {
    if (n_detectors < 1) {
        throw std::invalid_argument("cascade_povm: need at least one detector");
    }
    check_cutoff(cutoff);
    if (binomial(n_detectors + cutoff, cutoff) <= static_cast<double>(kCascadeEnumerationLimit)) {
        return cascade_povm_enumerated(n_detectors, eta, cutoff);
    }
    return cascade_povm_closed_form(n_detectors, eta, cutoff);
}

Povm cascade_povm_enumerated(int n_detectors, double eta, int cutoff) {
    if (n_detectors < 1) {
        throw std::invalid_argument("cascade_povm: need at least one detector");
    }
    check_eta(eta);
    check_cutoff(cutoff);
    const int outcomes = std::min(n_detectors, cutoff) + 1;
    Povm povm = counting_elements(outcomes, cutoff);

    // Category 0 is "lost"; categories 1..N are the detectors.
    const double p_lost = 1.0 - eta;
    const double p_bin = eta / n_detectors;
    std::vector<double> factorial(cutoff + 1, 1.0);
    for (int i = 1; i <= cutoff; ++i) {
        factorial[i] = factorial[i - 1] * i;
    }

    for (int n = 0; n <= cutoff; ++n) {
        // Nondecreasing category sequences of length n enumerate the multisets.
        // Neumaier-compensated sums; large N means millions of tiny terms.
        std::vector<double> prob(outcomes, 0.0);
        std::vector<double> carry(outcomes, 0.0);
        std::vector<int> seq;
        std::function<void(int)> recurse = [&](int first) {
            if (static_cast<int>(seq.size()) == n) {
                double weight = factorial[n];
                int clicks = 0;
                size_t i = 0;
                while (i < seq.size()) {
                    size_t j = i;
                    while (j < seq.size() && seq[j] == seq[i]) {
                        ++j;
                    }
                    int multiplicity = static_cast<int>(j - i);
                    weight /= factorial[multiplicity];
                    weight *= std::pow(seq[i] == 0 ? p_lost : p_bin, multiplicity);
                    if (seq[i] != 0) {
                        ++clicks;
                    }
                    i = j;
                }
                const double t = prob[clicks] + weight;
                carry[clicks] += std::abs(prob[clicks]) >= std::abs(weight) ? (prob[clicks] - t) + weight
                                                                            : (weight - t) + prob[clicks];
                prob[clicks] = t;
                return;
            }
            for (int c = first; c <= n_detectors; ++c) {
                seq.push_back(c);
                recurse(c);
                seq.pop_back();
            }
        };
        recurse(0);
        for (int k = 0; k < outcomes; ++k) {
            povm[k].weights[n] = clamp_unit(prob[k] + carry[k]);
        }
    }
    return povm;
}

Povm cascade_povm_closed_form(int n_detectors, double eta, int cutoff) {
    if (n_detectors < 1) {
        throw std::invalid_argument("cascade_povm: need at least one detector");
    }
    check_eta(eta);
    check_cutoff(cutoff);
    const int outcomes = std::min(n_detectors, cutoff) + 1;
    Povm povm = counting_elements(outcomes, cutoff);
    const auto stirling = stirling_second_kind(cutoff);
    const double bins = n_detectors;

    for (int k = 0; k < outcomes; ++k) {
        // N!/(N-k)! / N^k
        double distinct = 1.0;
        for (int i = 0; i < k; ++i) {
            distinct *= 1.0 - i / bins;
        }
        for (int n = k; n <= cutoff; ++n) {
            double total = 0.0;
            for (int d = k; d <= n; ++d) {
                total += binomial(n, d) * std::pow(1.0 - eta, n - d) * std::pow(eta, d) * stirling[d][k] *
                         distinct / std::pow(bins, d - k);
            }
            povm[k].weights[n] = clamp_unit(total);
        }
    }
    return povm;
}

double completeness_defect(const Povm& povm, int cutoff) {
    double defect = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        double total = 0.0;
        for (const auto& e : povm) {
            total += e.weight(n);
        }
        defect = std::max(defect, std::abs(1.0 - total));
    }
    return defect;
}

void DetectorModel::validate() const {
    check_eta(eta);
    if (kind == DetectorKind::kCascade && cascade_n < 1) {
        throw std::invalid_argument("cascade detector needs N >= 1");
    }
}

Povm make_povm(const DetectorModel& model, int cutoff) {
    model.validate();
    switch (model.kind) {
        case DetectorKind::kIdeal:
            return ideal_povm(cutoff);
        case DetectorKind::kThreshold:
            return threshold_povm(model.eta, cutoff);
        case DetectorKind::kDda:
            return dda_povm(model.eta, cutoff);
        case DetectorKind::kCascade:
            return cascade_povm(model.cascade_n, model.eta, cutoff);
        case DetectorKind::kVlpc:
            return vlpc_povm(model.eta, cutoff);
    }
    throw std::logic_error("make_povm: unknown detector kind");
}

PovmElement zero_click_element(const DetectorModel& model, int cutoff) {
    return make_povm(model, cutoff).front();
}

PovmElement one_click_element(const DetectorModel& model, int cutoff) {
    Povm povm = make_povm(model, cutoff);
    if (povm.size() < 2) {
        // Only possible for the ideal counter at cutoff 0.
        return {"k=1", std::vector<double>(cutoff + 1, 0.0)};
    }
    return povm[1];
}

std::string DetectorScheme::name() const {
    switch (kind) {
        case DetectorKind::kIdeal:
            return "ideal";
        case DetectorKind::kThreshold:
            return "threshold";
        case DetectorKind::kDda:
            return "dda";
        case DetectorKind::kCascade:
            return "cascade:" + std::to_string(cascade_n);
        case DetectorKind::kVlpc:
            return "vlpc";
    }
    return "?";
}

DetectorScheme DetectorScheme::parse(std::string_view text) {
    if (text == "ideal") {
        return {DetectorKind::kIdeal, 0};
    }
    if (text == "threshold") {
        return {DetectorKind::kThreshold, 0};
    }
    if (text == "dda") {
        return {DetectorKind::kDda, 0};
    }
    if (text == "vlpc") {
        return {DetectorKind::kVlpc, 0};
    }
    constexpr std::string_view prefix = "cascade:";
    if (text.starts_with(prefix)) {
        std::string_view digits = text.substr(prefix.size());
        int n = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && n >= 1) {
            return {DetectorKind::kCascade, n};
        }
        throw std::invalid_argument("cascade scheme needs a positive detector count, got '" + std::string(text) + "'");
    }
    throw std::invalid_argument("unknown detector scheme '" + std::string(text) + "'");
}

}  // namespace nsgate
