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

#ifndef SEMIBLIND_OFDM_HPP
#define SEMIBLIND_OFDM_HPP

#include "semiblind/channel.hpp"
#include "semiblind/numerics.hpp"

#include <cstddef>
#include <vector>

namespace semiblind {

// One OFDM symbol in the frequency domain: freq_symbols[l] is the transmit
// vector x_l on subcarrier l. The first training_len subcarriers carry
// symbols known to the receiver.
struct OfdmFrame {
    std::size_t n_subcarriers = 0;
    std::size_t n_tx = 0;
    std::vector<CVec> freq_symbols;
    std::size_t training_len = 0;
};

// exp(-j 2 pi p l / N), the tap-to-subcarrier kernel.
cplx subcarrier_kernel(std::size_t path, std::size_t subcarrier, std::size_t n_subcarriers);

// Per antenna: inverse unitary DFT, then the last cp_len samples prepended.
Streams modulate(const OfdmFrame& frame, std::size_t cp_len);

// Per antenna: drop cp_len samples, forward unitary DFT. Result is indexed
// by subcarrier, each entry a length n_rx receive vector y_l.
std::vector<CVec> demodulate(const Streams& rx, std::size_t cp_len, std::size_t n_subcarriers);

// H~_l = sum_p H_p exp(-j 2 pi p l / N)
CMat freq_response(const ChannelTaps& taps, std::size_t subcarrier, std::size_t n_subcarriers);

} // namespace semiblind

#endif
