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

#include <limits>

using namespace semiblind;

TEST_CASE("power profile with one path is unit power")
{
    for (double decay : {0.1, 1.0, 2.0, 50.0}) {
        const auto p = power_profile(1, decay);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("power profile approaches flat as decay grows")
{
    const auto p = power_profile(4, std::numeric_limits<double>::infinity());
    for (double v : p)
        CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gen_taps rejects zero counts")
{
    Rng rng(1);
    CHECK_THROWS_AS(gen_taps(0, 1, 1, {}, rng), ContractViolation);
    CHECK_THROWS_AS(gen_taps(1, 0, 1, {}, rng), ContractViolation);
    CHECK_THROWS_AS(gen_taps(1, 1, 0, {}, rng), ContractViolation);
}

TEST_CASE("gen_taps per-path variances match the profile")
{
    Rng rng(2024);
    const FadingParams params{1.0, 1.0};
    const std::size_t draws = 100000;
    const auto expected = power_profile(3, 1.0);
    std::vector<double> sum(3), sum_sq(3);
    for (std::size_t d = 0; d < draws; ++d) {
        const ChannelTaps t = gen_taps(1, 1, 3, params, rng);
        for (std::size_t p = 0; p < 3; ++p) {
            const double e = std::norm(t.taps[p](0, 0));
            sum[p] += e;
            sum_sq[p] += e * e;
        }
    }
    for (std::size_t p = 0; p < 3; ++p) {
        const double mean = sum[p] / draws;
        const double var = sum_sq[p] / draws - mean * mean;
        const double se = std::sqrt(var / draws);
        CAPTURE(p);
        CHECK(std::abs(mean - expected[p]) < 3.0 * se);
    }
}

TEST_CASE("evolve_taps with rho = 1 leaves taps unchanged")
{
    Rng rng(3);
    const ChannelTaps t = gen_taps(2, 3, 4, {}, rng);
    CHECK(evolve_taps(t, {2.0, 1.0}, rng) == t);
}

TEST_CASE("evolve_taps with rho = 0 forgets its input")
{
    Rng rng(4);
    const FadingParams params{2.0, 0.0};
    const std::size_t draws = 10000;
    cplx cross = 0.0;
    double power_in = 0.0, power_out = 0.0;
    for (std::size_t d = 0; d < draws; ++d) {
        const ChannelTaps in = gen_taps(1, 1, 1, params, rng);
        const ChannelTaps out = evolve_taps(in, params, rng);
        const cplx a = in.taps[0](0, 0);
        const cplx b = out.taps[0](0, 0);
        cross += b * std::conj(a);
        power_in += std::norm(a);
        power_out += std::norm(b);
    }
    const double corr = std::abs(cross) / std::sqrt(power_in * power_out);
    // Four standard errors of a null correlation estimate.
    CHECK(corr < 4.0 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("evolve_taps lag-1 autocorrelation equals rho")
{
    Rng rng(5);
    const FadingParams params{2.0, 0.9};
    ChannelTaps t = gen_taps(1, 1, 1, params, rng);
    const std::size_t steps = 100000;
    cplx lag1 = 0.0;
    double power = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const ChannelTaps next = evolve_taps(t, params, rng);
        lag1 += next.taps[0](0, 0) * std::conj(t.taps[0](0, 0));
        power += std::norm(t.taps[0](0, 0));
        t = next;
    }
    CHECK(std::abs(lag1.real() / power - 0.9) < 0.01);
}

TEST_CASE("apply_channel with an identity channel returns its input")
{
    Rng rng(6);
    ChannelTaps t = ChannelTaps::zeros(2, 2, 1);
    t.taps[0] = CMat::identity(2);
    const Streams tx{oracle::random_vector(16, rng), oracle::random_vector(16, rng)};
    CHECK(apply_channel(t, tx, 0.0, rng) == tx);
}

TEST_CASE("apply_channel of silence is silence")
{
    Rng rng(7);
    const ChannelTaps t = gen_taps(3, 2, 4, {}, rng);
    const Streams rx = apply_channel(t, Streams(2, CVec(20)), 0.0, rng);
    REQUIRE(rx.size() == 3);
    for (const auto& s : rx)
        for (const auto& x : s)
            CHECK(x == cplx{0.0, 0.0});
}

TEST_CASE("apply_channel matches the double-loop convolution")
{
    Rng rng(8);
    const ChannelTaps t = gen_taps(2, 2, 3, {}, rng);
    const Streams tx{oracle::random_vector(16, rng), oracle::random_vector(16, rng)};
    const Streams got = apply_channel(t, tx, 0.0, rng);
    const Streams want = oracle::convolve(t, tx);
    for (std::size_t r = 0; r < 2; ++r)
        CHECK(oracle::max_abs_diff(got[r], want[r]) < 1e-12);
}

TEST_CASE("apply_channel is linear in the transmit streams")
{
    Rng rng(9);
    const ChannelTaps t = gen_taps(2, 2, 4, {}, rng);
    const Streams a{oracle::random_vector(32, rng), oracle::random_vector(32, rng)};
    const Streams b{oracle::random_vector(32, rng), oracle::random_vector(32, rng)};
    Streams sum = a;
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t k = 0; k < 32; ++k)
            sum[s][k] += b[s][k];
    const Streams ra = apply_channel(t, a, 0.0, rng);
    const Streams rb = apply_channel(t, b, 0.0, rng);
    const Streams rs = apply_channel(t, sum, 0.0, rng);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t k = 0; k < 32; ++k)
            CHECK(std::abs(rs[r][k] - ra[r][k] - rb[r][k]) < 1e-12);
}

TEST_CASE("apply_channel adds noise of the requested power")
{
    Rng rng(10);
    const ChannelTaps t = ChannelTaps::zeros(1, 1, 1);
    const std::size_t len = 200000;
    const Streams rx = apply_channel(t, Streams(1, CVec(len)), 0.25, rng);
    double power = 0.0, power_sq = 0.0;
    for (const auto& x : rx[0]) {
        power += std::norm(x);
        power_sq += std::norm(x) * std::norm(x);
    }
    const double mean = power / len;
    const double se = std::sqrt((power_sq / len - mean * mean) / len);
    CHECK(std::abs(mean - 0.25) < 3.0 * se);
}

TEST_CASE("apply_channel rejects streams shorter than the channel")
{
    Rng rng(11);
    const ChannelTaps t = gen_taps(1, 1, 4, {}, rng);
    CHECK_THROWS_AS(apply_channel(t, Streams(1, CVec(3)), 0.0, rng), ContractViolation);
    CHECK_THROWS_AS(apply_channel(t, Streams(1, CVec(8)), -1.0, rng), ContractViolation);
}
