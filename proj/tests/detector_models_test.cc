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
#include <set>
#include <vector>

#include "gtest/gtest.h"

using namespace nsgate;

namespace {

// Exhaustively walks every photon -> {lost, detector 1..N} sequence and
// returns P(exactly k detectors click | n photons), indexed [n][k].
std::vector<std::vector<double>> brute_force_clicks(int n_detectors, double eta, int cutoff) {
    std::vector<std::vector<double>> table(cutoff + 1, std::vector<double>(n_detectors + 1, 0.0));
    for (int n = 0; n <= cutoff; ++n) {
        std::vector<int> seq(n, 0);
        while (true) {
            double p = 1.0;
            std::set<int> hit;
            for (int s : seq) {
                if (s == 0) {
                    p *= 1.0 - eta;
                } else {
                    p *= eta / n_detectors;
                    hit.insert(s);
                }
            }
            table[n][hit.size()] += p;
            int pos = 0;
            while (pos < n && ++seq[pos] > n_detectors) {
                seq[pos++] = 0;
            }
            if (pos == n) {
                break;
            }
        }
    }
    return table;
}

double max_gap(const Povm& a, const Povm& b, int cutoff) {
    double gap = 0.0;
    const size_t elements = std::max(a.size(), b.size());
    for (size_t e = 0; e < elements; ++e) {
        for (int n = 0; n <= cutoff; ++n) {
            const double wa = e < a.size() ? a[e].weight(n) : 0.0;
            const double wb = e < b.size() ? b[e].weight(n) : 0.0;
            gap = std::max(gap, std::abs(wa - wb));
        }
    }
    return gap;
}

std::vector<double> eta_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 100; ++i) {
        g.push_back(i / 100.0);
    }
    return g;
}

}  // namespace

TEST(detector_models, ideal_povm_examples) {
    Povm p = ideal_povm(2);
    ASSERT_EQ(p.size(), 3u);
    for (int k = 0; k <= 2; ++k) {
        for (int n = 0; n <= 2; ++n) {
            EXPECT_EQ(p[k].weight(n), k == n ? 1.0 : 0.0);
        }
    }
    EXPECT_EQ(p[1].weight(2), 0.0);
    EXPECT_EQ(p[1].label, "k=1");
    EXPECT_EQ(completeness_defect(p, 2), 0.0);
}

TEST(detector_models, threshold_povm_examples) {
    Povm unit = threshold_povm(1.0, 3);
    EXPECT_EQ(unit[0].weight(0), 1.0);
    for (int n = 1; n <= 3; ++n) {
        EXPECT_EQ(unit[0].weight(n), 0.0);
        EXPECT_EQ(unit[1].weight(n), 1.0);
    }
    Povm half = threshold_povm(0.5, 2);
    EXPECT_DOUBLE_EQ(half[0].weight(2), 0.25);
    EXPECT_DOUBLE_EQ(half[1].weight(2), 0.75);
    Povm blind = threshold_povm(0.0, 3);
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(blind[0].weight(n), 1.0);
        EXPECT_EQ(blind[1].weight(n), 0.0);
    }
}

TEST(detector_models, dda_povm_examples) {
    Povm unit = dda_povm(1.0, 2);
    ASSERT_EQ(unit.size(), 3u);
    EXPECT_EQ(unit[0].label, "none");
    EXPECT_EQ(unit[1].label, "one");
    EXPECT_EQ(unit[2].label, "both");
    EXPECT_NEAR(unit[0].weight(2), 0.0, 1e-15);
    EXPECT_NEAR(unit[1].weight(2), 0.5, 1e-15);
    EXPECT_NEAR(unit[2].weight(2), 0.5, 1e-15);
    EXPECT_NEAR(unit[1].weight(1), 1.0, 1e-15);
    EXPECT_NEAR(unit[2].weight(1), 0.0, 1e-15);
    EXPECT_NEAR(dda_povm(0.8, 2)[1].weight(2), 0.64, 1e-14);
}

TEST(detector_models, dda_matches_two_detector_enumeration) {
    for (double eta : {0.0, 0.13, 0.5, 0.8, 0.97, 1.0}) {
        const auto oracle = brute_force_clicks(2, eta, 3);
        Povm p = dda_povm(eta, 3);
        for (int n = 0; n <= 3; ++n) {
            for (int k = 0; k <= 2; ++k) {
                EXPECT_NEAR(p[k].weight(n), oracle[n][k], 1e-14) << "eta " << eta << " n " << n;
            }
        }
    }
}

TEST(detector_models, dda_single_photon_never_fires_both) {
    for (double eta : eta_grid()) {
        EXPECT_EQ(dda_povm(eta, 3)[2].weight(1), 0.0);
    }
}

TEST(detector_models, vlpc_povm_examples) {
    EXPECT_LE(max_gap(vlpc_povm(1.0, 3), ideal_povm(3), 3), 0.0);
    for (double eta : {0.2, 0.5, 0.9}) {
        Povm v = vlpc_povm(eta, 3);
        EXPECT_NEAR(v[1].weight(2), 2 * eta * (1 - eta), 1e-15);
        Povm t = threshold_povm(eta, 3);
        for (int n = 0; n <= 3; ++n) {
            EXPECT_NEAR(v[0].weight(n), t[0].weight(n), 1e-15);
        }
        EXPECT_EQ(v[2].weight(1), 0.0);
    }
    Povm half = vlpc_povm(0.5, 2);
    EXPECT_NEAR(half[1].weight(0), 0.0, 1e-15);
    EXPECT_NEAR(half[1].weight(1), 0.5, 1e-15);
    EXPECT_NEAR(half[1].weight(2), 0.5, 1e-15);
}

TEST(detector_models, cascade_small_cases_match_closed_models) {
    for (double eta : eta_grid()) {
        EXPECT_LE(max_gap(cascade_povm(2, eta, 3), dda_povm(eta, 3), 3), 1e-14) << eta;
        EXPECT_LE(max_gap(cascade_povm(1, eta, 3), threshold_povm(eta, 3), 3), 1e-14) << eta;
    }
}

TEST(detector_models, cascade_matches_raw_sequence_enumeration) {
    for (int n_det : {1, 2, 3, 5, 7}) {
        for (double eta : {0.0, 0.31, 0.77, 1.0}) {
            const auto oracle = brute_force_clicks(n_det, eta, 3);
            for (const Povm& p : {cascade_povm_enumerated(n_det, eta, 3), cascade_povm_closed_form(n_det, eta, 3)}) {
                for (int n = 0; n <= 3; ++n) {
                    for (int k = 0; k <= std::min(n_det, 3); ++k) {
                        EXPECT_NEAR(p[k].weight(n), oracle[n][k], 1e-14) << n_det << " " << eta;
                    }
                }
            }
        }
    }
}

TEST(detector_models, cascade_routes_agree) {
    for (int n_det : {4, 16, 64, 300}) {
        for (double eta : {0.05, 0.5, 0.9}) {
            EXPECT_LE(max_gap(cascade_povm_enumerated(n_det, eta, 3), cascade_povm_closed_form(n_det, eta, 3), 3),
                      1e-13);
        }
    }
    // Larger cutoffs exercise the multiset walk beyond the gate's needs.
    EXPECT_LE(max_gap(cascade_povm_enumerated(6, 0.6, 6), cascade_povm_closed_form(6, 0.6, 6), 6), 1e-13);
}

TEST(detector_models, cascade_element_count) {
    EXPECT_EQ(cascade_povm(2, 0.5, 3).size(), 3u);
    EXPECT_EQ(cascade_povm(10, 0.5, 3).size(), 4u);
    EXPECT_EQ(cascade_povm(3, 0.5, 5).size(), 4u);
}

TEST(detector_models, positivity_and_completeness_on_grid) {
    for (double eta : eta_grid()) {
        std::vector<Povm> all = {ideal_povm(3), threshold_povm(eta, 3), dda_povm(eta, 3), vlpc_povm(eta, 3)};
        for (int n_det : {1, 2, 3, 4, 8, 16, 32, 64}) {
            all.push_back(cascade_povm(n_det, eta, 3));
        }
        for (const Povm& p : all) {
            EXPECT_LE(completeness_defect(p, 3), 1e-12);
            for (const auto& e : p) {
                for (int n = 0; n <= 3; ++n) {
                    EXPECT_GE(e.weight(n), 0.0);
                    EXPECT_LE(e.weight(n), 1.0);
                }
            }
        }
    }
}

TEST(detector_models, completeness_defect_of_truncated_povm) {
    Povm p = dda_povm(0.6, 3);
    double max_both = 0.0;
    for (int n = 0; n <= 3; ++n) {
        max_both = std::max(max_both, p[2].weight(n));
    }
    p.pop_back();
    EXPECT_NEAR(completeness_defect(p, 3), max_both, 1e-15);
}

TEST(detector_models, cascade_converges_to_vlpc) {
    double previous = 1.0;
    double fitted_c = 0.0;
    for (int n_det = 2; n_det <= 4096; n_det *= 2) {
        const double gap = max_gap(cascade_povm(n_det, 0.9, 3), vlpc_povm(0.9, 3), 3);
        EXPECT_LE(gap, previous) << n_det;
        previous = gap;
        fitted_c = std::max(fitted_c, gap * n_det);
    }
    // Dominant collision term: three photons all registered, any pair sharing
    // a detector, eta^3 (3N - 2) / N^2.
    EXPECT_LE(fitted_c, 3.0);
    const double gap_big = max_gap(cascade_povm(10'000, 0.9, 3), vlpc_povm(0.9, 3), 3);
    EXPECT_GT(gap_big * 1e4, 2.0);
    EXPECT_LT(gap_big * 1e4, 3.0);
    RecordProperty("fitted_C", std::to_string(fitted_c));
}

TEST(detector_models, constructors_reject_bad_input) {
    EXPECT_THROW(threshold_povm(-0.1, 3), std::invalid_argument);
    EXPECT_THROW(dda_povm(1.5, 3), std::invalid_argument);
    EXPECT_THROW(vlpc_povm(std::nan(""), 3), std::invalid_argument);
    EXPECT_THROW(cascade_povm(0, 0.5, 3), std::invalid_argument);
    EXPECT_THROW(ideal_povm(-1), std::invalid_argument);
    EXPECT_THROW(DetectorModel::cascade(0, 0.5).validate(), std::invalid_argument);
    EXPECT_THROW(DetectorModel::dda(2.0).validate(), std::invalid_argument);
    EXPECT_NO_THROW(DetectorModel::vlpc(0.0).validate());
}

TEST(detector_models, click_elements) {
    PovmElement zero = zero_click_element(DetectorModel::dda(0.7), 3);
    PovmElement one = one_click_element(DetectorModel::dda(0.7), 3);
    EXPECT_EQ(zero.label, "none");
    EXPECT_EQ(one.label, "one");
    EXPECT_EQ(one_click_element(DetectorModel::threshold(0.7), 3).label, ">0");
    EXPECT_EQ(one_click_element(DetectorModel::ideal(), 3).weight(1), 1.0);
    EXPECT_EQ(one_click_element(DetectorModel::ideal(), 3).weight(2), 0.0);
    // The ideal model does not carry an efficiency: eta is ignored.
    EXPECT_EQ(make_povm({DetectorKind::kIdeal, 0.3, 0}, 3)[1].weight(1), 1.0);
}

TEST(detector_models, scheme_parse_round_trip) {
    for (const char* name : {"ideal", "threshold", "dda", "vlpc", "cascade:2", "cascade:16"}) {
        DetectorScheme s = DetectorScheme::parse(name);
        EXPECT_EQ(s.name(), name);
        EXPECT_EQ(DetectorScheme::parse(s.name()), s);
    }
    EXPECT_EQ(DetectorScheme::parse("cascade:8").cascade_n, 8);
    EXPECT_EQ(DetectorScheme::parse("ideal").at(0.4).eta, 1.0);
    EXPECT_EQ(DetectorScheme::parse("vlpc").at(0.4), DetectorModel::vlpc(0.4));
    for (const char* bad : {"", "DDA", "cascade", "cascade:", "cascade:0", "cascade:-3", "cascade:2x", "spcm"}) {
        EXPECT_THROW(DetectorScheme::parse(bad), std::invalid_argument) << bad;
    }
}
