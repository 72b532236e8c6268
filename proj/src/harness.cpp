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

#include "semiblind/harness.hpp"
#include "semiblind/detector.hpp"
#include "semiblind/errors.hpp"
#include "semiblind/estimator.hpp"
#include "semiblind/ofdm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

namespace semiblind {

std::string_view to_string(Mode mode)
{
    switch (mode) {
    case Mode::FullTraining: return "full-training";
    case Mode::TrainingOnly: return "training-only";
    case Mode::DD: return "dd";
    case Mode::ABA: return "aba";
    case Mode::LS: return "ls";
    case Mode::PerfectCSI: return "perfect-csi";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name)
{
    for (Mode m : {Mode::FullTraining, Mode::TrainingOnly, Mode::DD, Mode::ABA, Mode::LS, Mode::PerfectCSI})
        if (name == to_string(m))
            return m;
    return std::nullopt;
}

void validate(const SimConfig& c)
{
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (c.n_tx == 0 || c.n_rx == 0)
        fail("antenna counts must be >= 1");
    if (c.n_subcarriers == 0)
        fail("n_subcarriers must be >= 1");
    if (c.n_paths == 0)
        fail("n_paths must be >= 1");
    if (c.cp_len > c.n_subcarriers)
        fail("cp_len must not exceed n_subcarriers");
    if (c.n_subcarriers + c.cp_len < c.n_paths)
        fail("OFDM symbol shorter than the channel");
    if (c.training_len > c.n_subcarriers)
        fail("training_len must not exceed n_subcarriers");
    if (!(c.decay > 0.0))
        fail("decay must be > 0");
    if (!(c.doppler_rho >= 0.0 && c.doppler_rho <= 1.0))
        fail("doppler_rho must lie in [0, 1]");
    if (!(c.mu_train > 0.0) || !(c.mu_blind > 0.0))
        fail("step sizes must be > 0");
    if (c.mu_blind > c.mu_train)
        fail("mu_blind must not exceed mu_train");
    if (!(c.anneal_factor > 0.0 && c.anneal_factor <= 1.0))
        fail("anneal_factor must lie in (0, 1]");
    if (!(c.mu_alpha >= 0.0) || !(c.mu_beta >= 0.0))
        fail("mu_alpha and mu_beta must be >= 0");
    if (c.noise_var && !(*c.noise_var >= 0.0))
        fail("noise_var must be >= 0");
    if (!std::isfinite(c.ebn0_db))
        fail("ebn0_db must be finite");
    if (c.n_frames == 0 || c.n_trials == 0)
        fail("n_frames and n_trials must be >= 1");
    if (c.mode == Mode::LS && c.training_len == 0)
        fail("ls mode needs at least one training subcarrier");
}

std::vector<std::string> config_warnings(const SimConfig& c)
{
    std::vector<std::string> out;
    if (c.cp_len + 1 < c.n_paths)
        out.push_back("cp_len < n_paths - 1: subcarriers are not orthogonal after the channel");
    if (c.training_len == 0 && c.mode != Mode::PerfectCSI)
        out.push_back("training_len = 0: the estimator starts blind from zero taps");
    return out;
}

double noise_variance(const SimConfig& c)
{
    if (c.noise_var)
        return *c.noise_var;
    return std::pow(10.0, -c.ebn0_db / 10.0) / static_cast<double>(bits_per_symbol(c.modulation));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct FrameData {
    OfdmFrame frame;
    Bits bits; // bits[l] block of n_tx * bits_per_symbol per subcarrier
    std::vector<CVec> y;
};

FrameData draw_frame(const SimConfig& c, const ChannelTaps& taps, std::size_t training_len,
                     double noise_var, Rng& rng)
{
    const std::size_t per_sc = c.n_tx * bits_per_symbol(c.modulation);
    FrameData d;
    d.bits.resize(c.n_subcarriers * per_sc);
    for (auto& b : d.bits)
        b = static_cast<std::uint8_t>(rng() >> 63);
    d.frame.n_subcarriers = c.n_subcarriers;
    d.frame.n_tx = c.n_tx;
    d.frame.training_len = training_len;
    d.frame.freq_symbols.resize(c.n_subcarriers);
    for (std::size_t l = 0; l < c.n_subcarriers; ++l)
        d.frame.freq_symbols[l] = map_bits(std::span<const std::uint8_t>(d.bits).subspan(l * per_sc, per_sc),
                                           c.modulation);
    const Streams rx = apply_channel(taps, modulate(d.frame, c.cp_len), noise_var, rng);
    d.y = demodulate(rx, c.cp_len, c.n_subcarriers);
    return d;
}

// Detects the data subcarriers [training_len, N) with the given taps and
// counts bit errors.
std::pair<std::size_t, std::size_t> count_bit_errors(const SimConfig& c, const FrameData& d, const ChannelTaps& est)
{
    const std::size_t per_sc = c.n_tx * bits_per_symbol(c.modulation);
    std::size_t errors = 0;
    std::size_t total = 0;
    for (std::size_t l = d.frame.training_len; l < c.n_subcarriers; ++l) {
        const Detection det = hard_detect(freq_response(est, l, c.n_subcarriers), d.y[l], c.modulation);
        const Bits decided = demap(det.symbols, c.modulation);
        for (std::size_t i = 0; i < per_sc; ++i)
            errors += decided[i] != d.bits[l * per_sc + i];
        total += per_sc;
    }
    return {errors, total};
}

std::vector<MetricsRecord> run_trial(const SimConfig& c, std::size_t trial)
{
    Rng rng(trial_seed(c.seed, trial));
    const FadingParams fading{c.decay, c.doppler_rho};
    const double noise_var = noise_variance(c);
    ChannelTaps taps = gen_taps(c.n_rx, c.n_tx, c.n_paths, fading, rng);
    EstimatorState state = EstimatorState::initial(c.n_rx, c.n_tx, c.n_paths, c.mu_train, c.mu_blind, c.anneal_factor);
    const BlindMode blind{c.mode == Mode::ABA ? BlindMode::Variant::ABA : BlindMode::Variant::DD,
                          c.mu_alpha, c.mu_beta};

    std::vector<MetricsRecord> out;
    for (std::size_t f = 1; f <= c.n_frames; ++f) {
        if (f > 1)
            taps = evolve_taps(taps, fading, rng);
        const std::size_t training_len = f == 1 ? c.training_len : 0;
        const FrameData d = draw_frame(c, taps, training_len, noise_var, rng);

        bool cold_start = false;
        bool rank_deficient = false;
        auto record = [&](std::size_t pass, const ChannelTaps& est) {
            MetricsRecord r;
            r.mode = c.mode;
            r.trial = trial;
            r.frame = f;
            r.pass = pass;
            r.channel_mse = channel_mse(taps, est);
            std::tie(r.bit_errors, r.bits_total) = count_bit_errors(c, d, est);
            r.cold_start = cold_start;
            r.rank_deficient = rank_deficient;
            out.push_back(r);
        };
        const PassObserver observer = [&](std::size_t pass, const EstimatorState& s) { record(pass, s.est_taps); };

        switch (c.mode) {
        case Mode::TrainingOnly:
            cold_start = run_frame(state, d.frame, d.y, blind, 0, c.modulation).cold_start;
            record(0, state.est_taps);
            break;
        case Mode::DD:
        case Mode::ABA: {
            // The observer records before run_frame returns its report.
            bool zero = true;
            for (const auto& h : state.est_taps.taps)
                zero = zero && frobenius_norm_sq(h) == 0.0;
            cold_start = training_len == 0 && zero;
            run_frame(state, d.frame, d.y, blind, c.n_blind_passes, c.modulation, observer);
            break;
        }
        case Mode::FullTraining:
            run_full_training(state, d.frame, d.y, c.n_blind_passes, observer);
            break;
        case Mode::LS:
            if (f == 1) {
                std::vector<CVec> xs(d.frame.freq_symbols.begin(),
                                     d.frame.freq_symbols.begin() + static_cast<std::ptrdiff_t>(training_len));
                std::vector<CVec> ys(d.y.begin(), d.y.begin() + static_cast<std::ptrdiff_t>(training_len));
                std::vector<std::size_t> idx(training_len);
                for (std::size_t l = 0; l < training_len; ++l)
                    idx[l] = l;
                LsResult ls = ls_estimate(xs, ys, idx, c.n_paths, c.n_subcarriers);
                state.est_taps = std::move(ls.taps);
                rank_deficient = ls.rank_deficient;
            }
            record(0, state.est_taps);
            break;
        case Mode::PerfectCSI:
            record(0, taps);
            break;
        }
    }
    return out;
}

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v, double mean)
{
    if (v.size() < 2)
        return 0.0;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

} // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(0x5eedULL + static_cast<std::uint64_t>(trial)));
}

double channel_mse(const ChannelTaps& true_taps, const ChannelTaps& est_taps)
{
    require(true_taps.n_rx == est_taps.n_rx && true_taps.n_tx == est_taps.n_tx
                && true_taps.n_paths() == est_taps.n_paths(),
            "channel_mse: tap dimensions differ");
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t p = 0; p < true_taps.n_paths(); ++p) {
        ref += frobenius_norm_sq(true_taps.taps[p]);
        err += frobenius_norm_sq(axpy(-1.0, est_taps.taps[p], true_taps.taps[p]));
    }
    require(ref > 0.0, "channel_mse: true channel is zero");
    return err / ref;
}

std::vector<MetricsRecord> run_scenario(const SimConfig& config)
{
    validate(config);
    std::vector<std::vector<MetricsRecord>> per_trial(config.n_trials);
    std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, config.n_trials);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t id) {
        try {
            for (std::size_t t = next++; t < config.n_trials; t = next++)
                per_trial[t] = run_trial(config, t);
        } catch (...) {
            errors[id] = std::current_exception();
            next = config.n_trials;
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < workers; ++i)
            pool.emplace_back(work, i);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<MetricsRecord> out;
    for (auto& v : per_trial)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<AggregateRow> aggregate(const SimConfig& config, const std::vector<MetricsRecord>& records)
{
    struct Cell {
        std::vector<double> mse;
        std::vector<double> ber;
        std::size_t errors = 0;
        std::size_t bits = 0;
    };
    // Sum in trial order so the result does not depend on record order.
    std::vector<const MetricsRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records)
        ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const MetricsRecord* a, const MetricsRecord* b) { return a->trial < b->trial; });

    std::map<std::pair<std::size_t, std::size_t>, Cell> cells;
    for (const MetricsRecord* rp : ordered) {
        const MetricsRecord& r = *rp;
        Cell& c = cells[{r.frame, r.pass}];
        c.mse.push_back(r.channel_mse);
        c.ber.push_back(r.bits_total ? static_cast<double>(r.bit_errors) / static_cast<double>(r.bits_total) : 0.0);
        c.errors += r.bit_errors;
        c.bits += r.bits_total;
    }
    std::vector<AggregateRow> rows;
    for (const auto& [key, c] : cells) {
        AggregateRow row;
        row.mode = config.mode;
        row.n_tx = config.n_tx;
        row.n_rx = config.n_rx;
        row.ebn0_db = config.ebn0_db;
        row.frame = key.first;
        row.pass = key.second;
        row.channel_mse = mean_of(c.mse);
        row.channel_mse_se = standard_error(c.mse, row.channel_mse);
        row.ber = c.bits ? static_cast<double>(c.errors) / static_cast<double>(c.bits) : 0.0;
        row.ber_se = standard_error(c.ber, mean_of(c.ber));
        row.bits_total = c.bits;
        row.trials = c.mse.size();
        rows.push_back(row);
    }
    return rows;
}

std::vector<AggregateRow> run_sweep(const SimConfig& base, const SweepRequest& request)
{
    if (request.ebn0_db.empty())
        throw ConfigError("sweep needs at least one Eb/N0 point");
    if (request.modes.empty())
        throw ConfigError("sweep needs at least one mode");
    SimConfig probe = base;
    for (Mode m : request.modes) {
        probe.mode = m;
        for (double e : request.ebn0_db) {
            probe.ebn0_db = e;
            validate(probe);
        }
    }

    std::vector<AggregateRow> rows;
    for (double e : request.ebn0_db) {
        for (Mode m : request.modes) {
            SimConfig c = base;
            c.ebn0_db = e;
            c.mode = m;
            const auto cell_rows = aggregate(c, run_scenario(c));
            for (std::size_t i = 0; i < cell_rows.size(); ++i) {
                const bool last_of_frame = i + 1 == cell_rows.size() || cell_rows[i + 1].frame != cell_rows[i].frame;
                if (request.all_passes || last_of_frame)
                    rows.push_back(cell_rows[i]);
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<AggregateRow>& rows)
{
    out << kCsvHeader << '\n';
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return std::string(buf);
    };
    for (const auto& r : rows)
        out << to_string(r.mode) << ',' << r.n_tx << ',' << r.n_rx << ',' << num(r.ebn0_db) << ',' << r.frame << ','
            << r.pass << ',' << num(r.channel_mse) << ',' << num(r.ber) << ',' << r.bits_total << ',' << r.trials
            << '\n';
}

} // namespace semiblind
