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

#include "semiblind/self_check.hpp"
#include "semiblind/estimator.hpp"
#include "semiblind/harness.hpp"
#include "semiblind/modulation.hpp"
#include "semiblind/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace semiblind {

namespace {

constexpr std::uint64_t kSeed = 0x5e1fc4ec;

CVec random_vector(std::size_t n, Rng& rng)
{
    CVec v(n);
    for (auto& x : v)
        x = complex_gaussian(rng, 1.0);
    return v;
}

double relative_error(std::span<const cplx> a, std::span<const cplx> b)
{
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        diff += std::norm(a[i] - b[i]);
    return std::sqrt(diff / norm_sq(b));
}

OracleResult make_result(std::string name, double measured, double tolerance)
{
    return {std::move(name), measured, tolerance, measured < tolerance};
}

ChannelTaps random_taps(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths, Rng& rng)
{
    return gen_taps(n_rx, n_tx, n_paths, FadingParams{2.0, 1.0}, rng);
}

OfdmFrame random_qpsk_frame(std::size_t n_subcarriers, std::size_t n_tx, Rng& rng)
{
    OfdmFrame f;
    f.n_subcarriers = n_subcarriers;
    f.n_tx = n_tx;
    f.freq_symbols.resize(n_subcarriers);
    Bits bits(2 * n_tx);
    for (auto& x : f.freq_symbols) {
        for (auto& b : bits)
            b = static_cast<std::uint8_t>(rng() >> 63);
        x = map_bits(bits, Modulation::QPSK);
    }
    return f;
}

} // namespace

bool SelfCheckReport::all_passed() const
{
    return std::all_of(results.begin(), results.end(), [](const OracleResult& r) { return r.passed; });
}

OracleResult check_dft_direct_sum()
{
    Rng rng(kSeed);
    double worst = 0.0;
    for (std::size_t n : {1u, 2u, 8u, 12u, 64u, 512u}) {
        const CVec v = random_vector(n, rng);
        for (const auto dir : {DftDirection::Forward, DftDirection::Inverse}) {
            const double sign = dir == DftDirection::Forward ? -1.0 : 1.0;
            CVec ref(n);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    ref[k] += v[i] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((k * i) % n) / static_cast<double>(n));
            for (auto& x : ref)
                x /= std::sqrt(static_cast<double>(n));
            worst = std::max(worst, relative_error(dft(v, dir), ref));
        }
    }
    return make_result("dft vs direct sum", worst, 1e-12);
}

OracleResult check_dft_round_trip()
{
    Rng rng(kSeed + 1);
    double worst = 0.0;
    for (std::size_t n : {1u, 3u, 16u, 100u, 512u, 1000u, 1024u}) {
        const CVec v = random_vector(n, rng);
        worst = std::max(worst, relative_error(dft(dft(v, DftDirection::Forward), DftDirection::Inverse), v));
    }
    return make_result("dft round trip", worst, 1e-12);
}

OracleResult check_convolution()
{
    Rng rng(kSeed + 2);
    const std::size_t len = 16;
    const ChannelTaps taps = random_taps(2, 2, 3, rng);
    Streams tx(2);
    for (auto& s : tx)
        s = random_vector(len, rng);
    const Streams rx = apply_channel(taps, tx, 0.0, rng);

    double worst = 0.0;
    for (std::size_t r = 0; r < taps.n_rx; ++r) {
        // Full linear convolution of every scalar impulse response, truncated.
        CVec ref(len + taps.n_paths() - 1);
        for (std::size_t t = 0; t < taps.n_tx; ++t)
            for (std::size_t i = 0; i < len; ++i)
                for (std::size_t p = 0; p < taps.n_paths(); ++p)
                    ref[i + p] += tx[t][i] * taps.taps[p](r, t);
        ref.resize(len);
        worst = std::max(worst, relative_error(rx[r], ref));
    }
    return make_result("channel convolution", worst, 1e-12);
}

OracleResult check_subcarrier_equivalence(const FreqResponseFn& response)
{
    Rng rng(kSeed + 3);
    const std::size_t n = 64;
    const std::size_t n_paths = 4;
    const std::size_t cp = 8;
    const ChannelTaps taps = random_taps(3, 2, n_paths, rng);
    const OfdmFrame frame = random_qpsk_frame(n, 2, rng);
    const auto y = demodulate(apply_channel(taps, modulate(frame, cp), 0.0, rng), cp, n);

    double worst = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        worst = std::max(worst, relative_error(matvec(response(taps, l, n), frame.freq_symbols[l]), y[l]));
    return make_result("per-subcarrier equivalence", worst, 1e-10);
}

OracleResult check_subcarrier_equivalence()
{
    return check_subcarrier_equivalence(
        [](const ChannelTaps& t, std::size_t l, std::size_t n) { return freq_response(t, l, n); });
}

OracleResult check_lms_gradient()
{
    Rng rng(kSeed + 4);
    const std::size_t n = 64;
    EstimatorState state = EstimatorState::initial(3, 2, 3, 1.0, 1.0, 1.0);
    state.est_taps = random_taps(3, 2, 3, rng);
    const CVec x = random_vector(2, rng);
    const CVec y = random_vector(3, rng);
    const std::size_t l = 11;

    // With mu_train = 1 the update is exactly the descent direction.
    const EstimatorState stepped = lms_train_update(state, x, y, l, n);
    const double h = 1e-6;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t m = 0; m < state.est_taps.n_paths(); ++m) {
        for (std::size_t i = 0; i < state.est_taps.taps[m].data().size(); ++i) {
            auto cost_at = [&](cplx delta) {
                EstimatorState s = state;
                s.est_taps.taps[m].data()[i] += delta;
                return instantaneous_cost(s, x, y, l, n);
            };
            const double d_re = (cost_at({h, 0.0}) - cost_at({-h, 0.0})) / (2.0 * h);
            const double d_im = (cost_at({0.0, h}) - cost_at({0.0, -h})) / (2.0 * h);
            const cplx numeric = -0.5 * cplx{d_re, d_im};
            const cplx analytic = stepped.est_taps.taps[m].data()[i] - state.est_taps.taps[m].data()[i];
            worst = std::max(worst, std::abs(analytic - numeric));
            scale = std::max(scale, std::abs(analytic));
        }
    }
    return make_result("lms update vs finite-difference gradient", worst / scale, 1e-4);
}

OracleResult check_ls_recovery()
{
    Rng rng(kSeed + 5);
    const std::size_t n = 64;
    const std::size_t n_paths = 4;
    const ChannelTaps taps = random_taps(3, 2, n_paths, rng);
    const OfdmFrame frame = random_qpsk_frame(n, 2, rng);
    const auto y = demodulate(apply_channel(taps, modulate(frame, n_paths), 0.0, rng), n_paths, n);

    // Every fourth subcarrier: 16 equations for 8 unknowns per antenna.
    std::vector<std::size_t> idx;
    std::vector<CVec> xs;
    std::vector<CVec> ys;
    for (std::size_t l = 0; l < n; l += 4) {
        idx.push_back(l);
        xs.push_back(frame.freq_symbols[l]);
        ys.push_back(y[l]);
    }
    const LsResult ls = ls_estimate(xs, ys, idx, n_paths, n);
    const double mse = ls.rank_deficient ? 1.0 : channel_mse(taps, ls.taps);
    return make_result("ls exact recovery (normalized mse)", mse, 1e-8);
}

SelfCheckReport self_check()
{
    SelfCheckReport report;
    report.results.push_back(check_dft_direct_sum());
    report.results.push_back(check_dft_round_trip());
    report.results.push_back(check_convolution());
    report.results.push_back(check_subcarrier_equivalence());
    report.results.push_back(check_lms_gradient());
    report.results.push_back(check_ls_recovery());
    return report;
}

void print_report(std::ostream& out, const SelfCheckReport& report)
{
    char buf[160];
    for (const auto& r : report.results) {
        std::snprintf(buf, sizeof buf, "%-4s %-42s measured %.3e  tolerance %.1e", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.measured, r.tolerance);
        out << buf << '\n';
    }
}

} // namespace semiblind
