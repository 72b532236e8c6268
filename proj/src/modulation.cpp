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

#include "semiblind/modulation.hpp"
#include "semiblind/errors.hpp"

#include <cmath>

namespace semiblind {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

std::size_t bits_per_symbol(Modulation scheme)
{
    return scheme == Modulation::BPSK ? 1 : 2;
}

std::string_view to_string(Modulation scheme)
{
    return scheme == Modulation::BPSK ? "bpsk" : "qpsk";
}

std::optional<Modulation> parse_modulation(std::string_view name)
{
    if (name == "bpsk" || name == "BPSK")
        return Modulation::BPSK;
    if (name == "qpsk" || name == "QPSK")
        return Modulation::QPSK;
    return std::nullopt;
}

CVec map_bits(std::span<const std::uint8_t> bits, Modulation scheme)
{
    const std::size_t k = bits_per_symbol(scheme);
    require(bits.size() % k == 0, "map_bits: bit count not divisible by bits per symbol");
    CVec out(bits.size() / k);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (scheme == Modulation::BPSK) {
            out[i] = bits[i] ? -1.0 : 1.0;
        } else {
            const double re = bits[2 * i] ? -1.0 : 1.0;
            const double im = bits[2 * i + 1] ? -1.0 : 1.0;
            out[i] = cplx{re, im} * kInvSqrt2;
        }
    }
    return out;
}

Bits demap(std::span<const cplx> symbols, Modulation scheme)
{
    Bits out;
    out.reserve(symbols.size() * bits_per_symbol(scheme));
    for (const auto& s : symbols) {
        const cplx p = slice(s, scheme);
        out.push_back(p.real() < 0.0 ? 1 : 0);
        if (scheme == Modulation::QPSK)
            out.push_back(p.imag() < 0.0 ? 1 : 0);
    }
    return out;
}

cplx slice(cplx value, Modulation scheme)
{
    const double re = value.real() < 0.0 ? -1.0 : 1.0;
    if (scheme == Modulation::BPSK)
        return re;
    const double im = value.imag() < 0.0 ? -1.0 : 1.0;
    return cplx{re, im} * kInvSqrt2;
}

} // namespace semiblind
