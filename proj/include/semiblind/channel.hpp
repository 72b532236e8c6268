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

#ifndef SEMIBLIND_CHANNEL_HPP
#define SEMIBLIND_CHANNEL_HPP

#include "semiblind/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace semiblind {

using Rng = std::mt19937_64;

// One time-domain sample stream per antenna.
using Streams = std::vector<CVec>;

// Per-path MIMO channel matrices H_0 .. H_{L-1}, each n_rx x n_tx.
struct ChannelTaps {
    std::size_t n_rx = 0;
    std::size_t n_tx = 0;
    std::vector<CMat> taps;

    std::size_t n_paths() const { return taps.size(); }

    static ChannelTaps zeros(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths);

    bool operator==(const ChannelTaps&) const = default;
};

// Rayleigh fading with an exponential power-delay profile and first-order
// Gauss-Markov evolution from one OFDM symbol to the next.
struct FadingParams {
    double decay = 2.0;       // e-folding constant in paths; +inf gives a flat profile
    double doppler_rho = 1.0; // per-symbol AR(1) correlation, in [0, 1]
};

// sigma_p^2 = exp(-p/decay) / sum_q exp(-q/decay)
std::vector<double> power_profile(std::size_t n_paths, double decay);

cplx complex_gaussian(Rng& rng, double variance);

ChannelTaps gen_taps(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths,
                     const FadingParams& params, Rng& rng);

ChannelTaps evolve_taps(const ChannelTaps& taps, const FadingParams& params, Rng& rng);

// r_k = sum_p H_p s_{k-p} + w_k, linear convolution with s_{k<0} = 0.
Streams apply_channel(const ChannelTaps& taps, const Streams& tx, double noise_var, Rng& rng);

} // namespace semiblind

#endif
