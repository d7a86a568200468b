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

#ifndef NSGATE_TESTS_TEST_UTIL_H
#define NSGATE_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>

#include "nsgate/fock_space.h"

namespace testing_util {

/// Random single-mode state on n = 0..max_n with squared norm `norm_sq`.
inline nsgate::PureState random_single_mode(std::mt19937_64& rng, int max_n, double norm_sq, int cutoff = -1) {
    std::normal_distribution<double> g;
    std::vector<nsgate::Complex> amps(max_n + 1);
    double total = 0;
    for (auto& a : amps) {
        a = {g(rng), g(rng)};
        total += std::norm(a);
    }
    for (auto& a : amps) {
        a *= std::sqrt(norm_sq / total) * (1 - 1e-15);
    }
    return nsgate::PureState::single_mode(amps, cutoff < 0 ? max_n : cutoff);
}

/// Random state over every basis state of `modes` modes with total photon
/// number <= cutoff.
inline nsgate::PureState random_multimode(std::mt19937_64& rng, int modes, int cutoff, double norm_sq) {
    std::normal_distribution<double> g;
    nsgate::PureState::AmplitudeMap map;
    std::vector<int> occ(modes, 0);
    double total = 0;
    while (true) {
        int sum = 0;
        for (int n : occ) {
            sum += n;
        }
        if (sum <= cutoff) {
            nsgate::Complex a{g(rng), g(rng)};
            total += std::norm(a);
            map.emplace(nsgate::FockBasisState(occ), a);
        }
        int m = modes - 1;
        while (m >= 0 && ++occ[m] > cutoff) {
            occ[m] = 0;
            --m;
        }
        if (m < 0) {
            break;
        }
    }
    for (auto& [basis, a] : map) {
        a *= std::sqrt(norm_sq / total) * (1 - 1e-15);
    }
    return nsgate::PureState(modes, cutoff, std::move(map));
}

}  // namespace testing_util

#endif
