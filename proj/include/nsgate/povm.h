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

#ifndef NSGATE_POVM_H
#define NSGATE_POVM_H

#include <cstddef>
#include <string>
#include <vector>

namespace nsgate {

/// One outcome of a photon-counting measurement. Every detector model here is
/// diagonal in photon number, so an element is its list of weights
/// <n|Pi|n> for n = 0..cutoff.
struct PovmElement {
    std::string label;
    std::vector<double> weights;

    int cutoff() const {
        return static_cast<int>(weights.size()) - 1;
    }
    /// Weight at photon number n; zero beyond the stored cutoff.
    double weight(int n) const {
        return n >= 0 && static_cast<size_t>(n) < weights.size() ? weights[n] : 0.0;
    }
};

using Povm = std::vector<PovmElement>;

}  // namespace nsgate

#endif
