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

#ifndef SEMIBLIND_MODULATION_HPP
#define SEMIBLIND_MODULATION_HPP

#include "semiblind/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace semiblind {

// Unit average symbol energy. BPSK: bit 0 -> +1, bit 1 -> -1.
// QPSK (Gray): bits (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
enum class Modulation { BPSK, QPSK };

using Bits = std::vector<std::uint8_t>;

std::size_t bits_per_symbol(Modulation scheme);
std::string_view to_string(Modulation scheme);
std::optional<Modulation> parse_modulation(std::string_view name);

CVec map_bits(std::span<const std::uint8_t> bits, Modulation scheme);
Bits demap(std::span<const cplx> symbols, Modulation scheme);

// Nearest constellation point. Ties resolve towards the smaller Gray label,
// which for these constellations means a zero component slices positive.
cplx slice(cplx value, Modulation scheme);

} // namespace semiblind

#endif
