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

#include "semiblind/channel.hpp"
#include "semiblind/errors.hpp"

#include <cmath>

namespace semiblind {

ChannelTaps ChannelTaps::zeros(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths)
{
    ChannelTaps t;
    t.n_rx = n_rx;
    t.n_tx = n_tx;
    t.taps.assign(n_paths, CMat(n_rx, n_tx));
    return t;
}

std::vector<double> power_profile(std::size_t n_paths, double decay)
{
    require(n_paths >= 1, "power_profile: n_paths must be >= 1");
    require(decay > 0.0, "power_profile: decay must be > 0");
    std::vector<double> p(n_paths);
    double total = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        p[i] = std::exp(-static_cast<double>(i) / decay);
        total += p[i];
    }
    for (auto& v : p)
        v /= total;
    return p;
}

cplx complex_gaussian(Rng& rng, double variance)
{
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

ChannelTaps gen_taps(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths,
                     const FadingParams& params, Rng& rng)
{
    require(n_rx >= 1 && n_tx >= 1 && n_paths >= 1, "gen_taps: counts must be >= 1");
    const auto profile = power_profile(n_paths, params.decay);
    ChannelTaps t = ChannelTaps::zeros(n_rx, n_tx, n_paths);
    for (std::size_t p = 0; p < n_paths; ++p)
        for (auto& h : t.taps[p].data())
            h = complex_gaussian(rng, profile[p]);
    return t;
}

ChannelTaps evolve_taps(const ChannelTaps& taps, const FadingParams& params, Rng& rng)
{
    require(params.doppler_rho >= 0.0 && params.doppler_rho <= 1.0,
            "evolve_taps: doppler_rho must lie in [0, 1]");
    const double rho = params.doppler_rho;
    if (rho == 1.0)
        return taps;
    const double innovation = std::sqrt(1.0 - rho * rho);
    const auto profile = power_profile(taps.n_paths(), params.decay);
    ChannelTaps out = taps;
    for (std::size_t p = 0; p < out.n_paths(); ++p)
        for (auto& h : out.taps[p].data())
            h = rho * h + innovation * complex_gaussian(rng, profile[p]);
    return out;
}

Streams apply_channel(const ChannelTaps& taps, const Streams& tx, double noise_var, Rng& rng)
{
    require(tx.size() == taps.n_tx, "apply_channel: stream count does not match n_tx");
    require(noise_var >= 0.0, "apply_channel: noise_var must be >= 0");
    const std::size_t len = tx.empty() ? 0 : tx.front().size();
    for (const auto& s : tx)
        require(s.size() == len, "apply_channel: streams have different lengths");
    require(len >= taps.n_paths(), "apply_channel: stream shorter than the channel");

    Streams rx(taps.n_rx, CVec(len));
    for (std::size_t r = 0; r < taps.n_rx; ++r) {
        for (std::size_t k = 0; k < len; ++k) {
            cplx acc = 0.0;
            for (std::size_t p = 0; p <= k && p < taps.n_paths(); ++p) {
                const CMat& h = taps.taps[p];
                for (std::size_t t = 0; t < taps.n_tx; ++t)
                    acc += h(r, t) * tx[t][k - p];
            }
            rx[r][k] = acc;
        }
    }
    if (noise_var > 0.0)
        for (auto& stream : rx)
            for (auto& x : stream)
                x += complex_gaussian(rng, noise_var);
    return rx;
}

} // namespace semiblind
