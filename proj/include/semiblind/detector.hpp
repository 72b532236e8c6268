// SPDX-License-Identifier: Apache-2.0
//
// semiblind: time-domain semi-blind MIMO-OFDM channel estimation
// Copyright (C) 2026 The semiblind authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SEMIBLIND_DETECTOR_HPP
#define SEMIBLIND_DETECTOR_HPP

#include "semiblind/estimator.hpp"
#include "semiblind/modulation.hpp"
#include "semiblind/numerics.hpp"

#include <cstddef>
#include <span>

namespace semiblind {

struct Detection {
    CVec symbols;
    bool degenerate = false; // channel estimate was all zero
};

// Regularized zero forcing: (G^H G + eps I) x = G^H y with
// eps = 1e-6 * trace(G^H G) / n_tx, then per-entry slicing.
Detection hard_detect(const CMat& g, std::span<const cplx> y, Modulation scheme);

Detection hard_detect(const EstimatorState& state, std::span<const cplx> y, std::size_t l,
                      std::size_t n_subcarriers, Modulation scheme);

} // namespace semiblind

#endif
