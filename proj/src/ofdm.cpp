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

#include "semiblind/ofdm.hpp"
#include "semiblind/errors.hpp"

#include <cmath>

namespace semiblind {

cplx subcarrier_kernel(std::size_t path, std::size_t subcarrier, std::size_t n_subcarriers)
{
    // Reduce p*l mod N first so the phase stays in [0, 2*pi).
    const double angle = -2.0 * kPi * static_cast<double>((path * subcarrier) % n_subcarriers)
                         / static_cast<double>(n_subcarriers);
    return {std::cos(angle), std::sin(angle)};
}

Streams modulate(const OfdmFrame& frame, std::size_t cp_len)
{
    const std::size_t n = frame.n_subcarriers;
    require(n >= 1, "modulate: frame has no subcarriers");
    require(frame.freq_symbols.size() == n, "modulate: freq_symbols size differs from n_subcarriers");
    require(frame.training_len <= n, "modulate: training_len exceeds n_subcarriers");
    require(cp_len <= n, "modulate: cyclic prefix longer than the symbol");

    Streams out(frame.n_tx);
    CVec per_antenna(n);
    for (std::size_t t = 0; t < frame.n_tx; ++t) {
        for (std::size_t l = 0; l < n; ++l) {
            require(frame.freq_symbols[l].size() == frame.n_tx, "modulate: transmit vector has wrong length");
            per_antenna[l] = frame.freq_symbols[l][t];
        }
        const CVec core = dft(per_antenna, DftDirection::Inverse);
        CVec& s = out[t];
        s.reserve(n + cp_len);
        s.insert(s.end(), core.end() - static_cast<std::ptrdiff_t>(cp_len), core.end());
        s.insert(s.end(), core.begin(), core.end());
    }
    return out;
}

std::vector<CVec> demodulate(const Streams& rx, std::size_t cp_len, std::size_t n_subcarriers)
{
    require(n_subcarriers >= 1, "demodulate: n_subcarriers must be >= 1");
    std::vector<CVec> y(n_subcarriers, CVec(rx.size()));
    for (std::size_t r = 0; r < rx.size(); ++r) {
        require(rx[r].size() == n_subcarriers + cp_len, "demodulate: stream length != n_subcarriers + cp_len");
        const CVec freq = dft(std::span<const cplx>(rx[r]).subspan(cp_len), DftDirection::Forward);
        for (std::size_t l = 0; l < n_subcarriers; ++l)
            y[l][r] = freq[l];
    }
    return y;
}

CMat freq_response(const ChannelTaps& taps, std::size_t subcarrier, std::size_t n_subcarriers)
{
    require(subcarrier < n_subcarriers, "freq_response: subcarrier index out of range");
    CMat g(taps.n_rx, taps.n_tx);
    auto out = g.data();
    for (std::size_t p = 0; p < taps.n_paths(); ++p) {
        const cplx w = subcarrier_kernel(p, subcarrier, n_subcarriers);
        auto h = taps.taps[p].data();
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * h[i];
    }
    return g;
}

} // namespace semiblind
