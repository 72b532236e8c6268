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


#include <doctest.h>

#include "oracles.hpp"
#include "semiblind/channel.hpp"
#include "semiblind/errors.hpp"
#include "semiblind/ofdm.hpp"

using namespace semiblind;

namespace {

OfdmFrame random_frame(std::size_t n, std::size_t n_tx, Rng& rng)
{
    OfdmFrame f{n, n_tx, {}, 0};
    for (std::size_t l = 0; l < n; ++l)
        f.freq_symbols.push_back(oracle::random_vector(n_tx, rng));
    return f;
}

// Worst relative mismatch between demodulated y_l and H~_l x_l.
double subcarrier_mismatch(const ChannelTaps& taps, const OfdmFrame& frame, std::size_t cp_len, Rng& rng)
{
    const auto y = demodulate(apply_channel(taps, modulate(frame, cp_len), 0.0, rng), cp_len, frame.n_subcarriers);
    double worst = 0.0;
    for (std::size_t l = 0; l < frame.n_subcarriers; ++l) {
        const CVec want = matvec(oracle::response(taps, l, frame.n_subcarriers), frame.freq_symbols[l]);
        worst = std::max(worst, oracle::max_abs_diff(y[l], want) / oracle::l2(want));
    }
    return worst;
}

} // namespace

TEST_CASE("impulse on subcarrier 0 gives a constant time sequence")
{
    const std::size_t n = 16;
    OfdmFrame f{n, 1, std::vector<CVec>(n, CVec{0.0}), 0};
    f.freq_symbols[0][0] = 1.0;
    const Streams s = modulate(f, 0);
    REQUIRE(s[0].size() == n);
    for (const auto& x : s[0])
        CHECK(std::abs(x - 1.0 / std::sqrt(static_cast<double>(n))) < 1e-15);
}

TEST_CASE("modulate prepends the cyclic prefix")
{
    Rng rng(1);
    const OfdmFrame f = random_frame(32, 2, rng);
    const Streams s = modulate(f, 5);
    for (const auto& stream : s) {
        REQUIRE(stream.size() == 37);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(stream[k] == stream[k + 32]);
    }
}

TEST_CASE("demodulate inverts modulate")
{
    Rng rng(2);
    const OfdmFrame f = random_frame(64, 3, rng);
    const auto y = demodulate(modulate(f, 8), 8, 64);
    for (std::size_t l = 0; l < 64; ++l)
        CHECK(oracle::max_abs_diff(y[l], f.freq_symbols[l]) / oracle::l2(f.freq_symbols[l]) < 1e-12);
}

TEST_CASE("modulation preserves energy")
{
    Rng rng(3);
    const OfdmFrame f = random_frame(100, 2, rng);
    const Streams s = modulate(f, 0);
    double freq = 0.0, time = 0.0;
    for (const auto& v : f.freq_symbols)
        freq += std::norm(oracle::l2(v));
    for (const auto& v : s)
        time += std::norm(oracle::l2(v));
    CHECK(std::abs(time - freq) / freq < 1e-12);
}

TEST_CASE("demodulate checks stream length")
{
    CHECK_THROWS_AS(demodulate(Streams(2, CVec(70)), 8, 64), ContractViolation);
}

TEST_CASE("channel acts per subcarrier when the prefix covers its memory")
{
    Rng rng(4);
    for (std::size_t paths : {1u, 3u, 8u}) {
        CAPTURE(paths);
        const ChannelTaps taps = gen_taps(3, 2, paths, {}, rng);
        const OfdmFrame f = random_frame(64, 2, rng);
        CHECK(subcarrier_mismatch(taps, f, paths - 1, rng) < 1e-10);
        CHECK(subcarrier_mismatch(taps, f, 16, rng) < 1e-10);
    }
}

TEST_CASE("a prefix shorter than the channel memory breaks the per-subcarrier model")
{
    Rng rng(5);
    const ChannelTaps taps = gen_taps(2, 2, 8, {}, rng);
    const OfdmFrame f = random_frame(64, 2, rng);
    CHECK(subcarrier_mismatch(taps, f, 3, rng) > 1e-3);
}

TEST_CASE("freq_response special cases")
{
    Rng rng(6);
    const ChannelTaps taps = gen_taps(2, 3, 5, {}, rng);

    CMat sum(2, 3);
    for (const auto& h : taps.taps)
        sum = axpy(1.0, h, sum);
    CHECK(freq_response(taps, 0, 32) == sum);

    ChannelTaps flat = taps;
    flat.taps.resize(1);
    for (std::size_t l = 0; l < 32; ++l)
        CHECK(freq_response(flat, l, 32) == flat.taps[0]);

    ChannelTaps two = ChannelTaps::zeros(1, 1, 2);
    two.taps[0](0, 0) = 1.0;
    two.taps[1](0, 0) = 1.0;
    CHECK(std::abs(freq_response(two, 0, 2)(0, 0) - 2.0) < 1e-15);
    CHECK(std::abs(freq_response(two, 1, 2)(0, 0)) < 1e-15);

    for (std::size_t l : {1u, 7u, 31u})
        CHECK(oracle::max_abs_diff(freq_response(taps, l, 32), oracle::response(taps, l, 32)) < 1e-13);

    CHECK_THROWS_AS(freq_response(taps, 32, 32), ContractViolation);
}

TEST_CASE("freq_response equals the DFT of each tap sequence")
{
    Rng rng(7);
    const std::size_t n = 16;
    const ChannelTaps taps = gen_taps(2, 2, 4, {}, rng);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t t = 0; t < 2; ++t) {
            CVec seq(n);
            for (std::size_t p = 0; p < 4; ++p)
                seq[p] = taps.taps[p](r, t);
            const CVec f = dft(seq, DftDirection::Forward);
            for (std::size_t l = 0; l < n; ++l)
                CHECK(std::abs(f[l] * std::sqrt(static_cast<double>(n)) - freq_response(taps, l, n)(r, t)) < 1e-12);
        }
}
