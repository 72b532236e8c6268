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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
// "Separated by 2 SE" means the two 2-standard-error intervals do not
// overlap: |a - b| >= 2 (se_a + se_b). "Within 2 SE" is the complement.

#include "semiblind/estimator.hpp"
#include "semiblind/harness.hpp"
#include "semiblind/self_check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace semiblind;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool separated_below(double a, double se_a, double b, double se_b)
{
    return b - a >= 2.0 * (se_a + se_b);
}

bool within(double a, double se_a, double b, double se_b)
{
    return std::abs(a - b) <= 2.0 * (se_a + se_b);
}

// Rows of one scenario keyed by (frame, pass).
std::map<std::pair<std::size_t, std::size_t>, AggregateRow> cells(const SimConfig& c)
{
    std::map<std::pair<std::size_t, std::size_t>, AggregateRow> out;
    for (const auto& r : aggregate(c, run_scenario(c)))
        out[{r.frame, r.pass}] = r;
    return out;
}

AggregateRow last_pass(const SimConfig& c)
{
    return cells(c).rbegin()->second;
}

// One row per frame, taken after its final pass.
std::vector<AggregateRow> last_pass_per_frame(const SimConfig& c)
{
    std::vector<AggregateRow> out;
    for (const auto& [key, row] : cells(c)) {
        if (!out.empty() && out.back().frame == key.first)
            out.back() = row;
        else
            out.push_back(row);
    }
    return out;
}

SimConfig reference_config(Mode mode, double ebn0_db)
{
    SimConfig c;
    c.n_tx = 2;
    c.n_rx = 4;
    c.n_subcarriers = 512;
    c.training_len = 128;
    c.n_trials = 200;
    c.mode = mode;
    c.ebn0_db = ebn0_db;
    return c;
}

Verdict c1_oracles()
{
    Verdict v;
    const auto start = Clock::now();
    const SelfCheckReport report = self_check();
    const double elapsed = seconds_since(start);
    for (const auto& r : report.results) {
        v.detail << ' ' << r.name << '=' << fmt(r.measured) << "(<" << fmt(r.tolerance) << ')';
        v.require(r.passed && r.measured < r.tolerance, r.name);
    }
    v.detail << " time=" << fmt(elapsed) << "s";
    v.require(elapsed < 30.0, "runtime >= 30 s");
    return v;
}

Verdict c2_noiseless_convergence()
{
    Verdict v;
    const auto start = Clock::now();
    const std::size_t n = 64, n_paths = 4, trials = 20;
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(trial_seed(2, t));
        const ChannelTaps truth = gen_taps(2, 2, n_paths, {}, rng);
        OfdmFrame frame{n, 2, {}, n};
        for (std::size_t l = 0; l < n; ++l)
            frame.freq_symbols.push_back(CVec{(rng() >> 63) ? -1.0 : 1.0, (rng() >> 63) ? -1.0 : 1.0});
        const auto y = demodulate(apply_channel(truth, modulate(frame, n_paths - 1), 0.0, rng), n_paths - 1, n);
        EstimatorState s = EstimatorState::initial(2, 2, n_paths, 0.1, 0.1, 1.0);
        for (int epoch = 0; epoch < 20; ++epoch)
            run_frame(s, frame, y, BlindMode{}, 0, Modulation::BPSK);
        worst = std::max(worst, channel_mse(truth, s.est_taps));
    }
    const double elapsed = seconds_since(start);
    v.detail << " worst_mse=" << fmt(worst) << " over " << trials << " channels, mu_train=0.1, time=" << fmt(elapsed)
             << "s";
    v.require(worst < 1e-6, "mse >= 1e-6");
    v.require(elapsed < 10.0, "runtime >= 10 s");
    return v;
}

Verdict c3_semiblind_gain()
{
    Verdict v;
    const auto start = Clock::now();
    const AggregateRow base = last_pass(reference_config(Mode::TrainingOnly, 10.0));
    v.detail << " training-only mse=" << fmt(base.channel_mse) << "+-" << fmt(base.channel_mse_se)
             << " ber=" << fmt(base.ber);
    for (Mode m : {Mode::DD, Mode::ABA}) {
        const AggregateRow r = last_pass(reference_config(m, 10.0));
        const std::string name(to_string(m));
        v.detail << "; " << name << " mse=" << fmt(r.channel_mse) << "+-" << fmt(r.channel_mse_se)
                 << " ber=" << fmt(r.ber);
        v.require(separated_below(r.channel_mse, r.channel_mse_se, base.channel_mse, base.channel_mse_se),
                  name + " mse not 2 SE below training-only");
        v.require(r.ber < base.ber, name + " ber not below training-only");
    }
    const double elapsed = seconds_since(start);
    v.detail << "; time=" << fmt(elapsed) << "s";
    v.require(elapsed < 600.0, "runtime >= 10 min");
    return v;
}

Verdict c4_multipass()
{
    Verdict v;
    SimConfig c = reference_config(Mode::ABA, 30.0);
    c.n_blind_passes = 5;
    const auto rows = cells(c);
    auto at = [&](std::size_t pass) { return rows.at({1, pass}); };
    for (std::size_t p = 1; p <= 5; ++p)
        v.detail << " p" << p << '=' << fmt(at(p).channel_mse) << "+-" << fmt(at(p).channel_mse_se);
    v.require(separated_below(at(3).channel_mse, at(3).channel_mse_se, at(1).channel_mse, at(1).channel_mse_se),
              "pass 3 not 2 SE below pass 1");
    for (std::size_t p : {4u, 5u})
        v.require(within(at(p).channel_mse, at(p).channel_mse_se, at(3).channel_mse, at(3).channel_mse_se),
                  "pass " + std::to_string(p) + " not within 2 SE of pass 3");
    return v;
}

Verdict c5_hierarchy()
{
    Verdict v;
    for (double e : {0.0, 10.0, 20.0, 30.0}) {
        const AggregateRow perfect = last_pass(reference_config(Mode::PerfectCSI, e));
        const AggregateRow full = last_pass(reference_config(Mode::FullTraining, e));
        const AggregateRow dd = last_pass(reference_config(Mode::DD, e));
        const AggregateRow aba = last_pass(reference_config(Mode::ABA, e));
        const AggregateRow plain = last_pass(reference_config(Mode::TrainingOnly, e));
        const AggregateRow& best = dd.ber <= aba.ber ? dd : aba;

        v.detail << " [" << fmt(e) << " dB: perfect=" << fmt(perfect.ber) << " full=" << fmt(full.ber)
                 << " " << to_string(best.mode) << '=' << fmt(best.ber) << " training-only=" << fmt(plain.ber) << ']';
        auto ordered = [&](const AggregateRow& lo, const AggregateRow& hi, const char* what) {
            v.require(lo.ber <= hi.ber || within(lo.ber, lo.ber_se, hi.ber, hi.ber_se),
                      std::string(what) + " at " + fmt(e) + " dB");
        };
        ordered(perfect, full, "perfect-csi > full-training");
        ordered(full, best, "full-training > best semi-blind");
        ordered(best, plain, "best semi-blind > training-only");
    }
    return v;
}

Verdict c6_ls_failure()
{
    Verdict v;

    SimConfig shortc = reference_config(Mode::LS, 10.0);
    shortc.training_len = 12; // fewer equations than n_tx * n_paths = 16
    const auto ls_records = run_scenario(shortc);
    const bool all_flagged = std::all_of(ls_records.begin(), ls_records.end(),
                                         [](const MetricsRecord& r) { return r.rank_deficient; });
    const AggregateRow ls_short = aggregate(shortc, ls_records).front();
    shortc.mode = Mode::TrainingOnly;
    const AggregateRow lms_short = last_pass(shortc);
    v.detail << " T=12: ls=" << fmt(ls_short.channel_mse) << " lms=" << fmt(lms_short.channel_mse)
             << " rank_deficient=" << (all_flagged ? "all" : "not all");
    v.require(all_flagged, "rank_deficient not set");
    v.require(ls_short.channel_mse >= 10.0 * lms_short.channel_mse, "ls mse < 10x lms");

    SimConfig fullc = reference_config(Mode::LS, 10.0);
    fullc.training_len = fullc.n_subcarriers;
    const AggregateRow ls_full = last_pass(fullc);
    fullc.mode = Mode::TrainingOnly;
    const AggregateRow lms_full = last_pass(fullc);
    v.detail << "; T=N: ls=" << fmt(ls_full.channel_mse) << " lms=" << fmt(lms_full.channel_mse);
    v.require(ls_full.channel_mse <= lms_full.channel_mse, "ls mse > lms with full training");
    return v;
}

Verdict c7_tracking()
{
    Verdict v;
    SimConfig c = reference_config(Mode::DD, 10.0);
    c.training_len = c.n_subcarriers;
    c.n_frames = 20;
    c.n_blind_passes = 5;
    c.doppler_rho = 0.98;

    const std::vector<AggregateRow> dd = last_pass_per_frame(c);
    c.mode = Mode::TrainingOnly;
    const std::vector<AggregateRow> frozen = last_pass_per_frame(c);

    const double ref = dd[1].channel_mse;
    double worst_db = 0.0;
    for (std::size_t f = 1; f < dd.size(); ++f)
        worst_db = std::max(worst_db, std::abs(10.0 * std::log10(dd[f].channel_mse / ref)));
    v.detail << " dd frame2=" << fmt(ref) << " frame20=" << fmt(dd.back().channel_mse)
             << " worst_dev=" << fmt(worst_db) << "dB";
    v.require(worst_db <= 3.0, "dd leaves the 3 dB band");

    bool monotone = true;
    for (std::size_t f = 1; f < frozen.size(); ++f)
        monotone = monotone && frozen[f].channel_mse > frozen[f - 1].channel_mse;
    v.detail << "; training-only frame1=" << fmt(frozen.front().channel_mse) << " frame20="
             << fmt(frozen.back().channel_mse) << "+-" << fmt(frozen.back().channel_mse_se)
             << (monotone ? " monotone" : " not monotone");
    v.require(monotone, "training-only mse not monotone");
    v.require(separated_below(frozen.front().channel_mse, frozen.front().channel_mse_se, frozen.back().channel_mse,
                              frozen.back().channel_mse_se),
              "training-only frame 20 not 2 SE above frame 1");
    v.require(separated_below(dd.back().channel_mse, dd.back().channel_mse_se, frozen.back().channel_mse,
                              frozen.back().channel_mse_se),
              "dd not 2 SE below training-only at frame 20");
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"C1 oracle suite", c1_oracles},
        {"C2 noiseless convergence", c2_noiseless_convergence},
        {"C3 semi-blind gain", c3_semiblind_gain},
        {"C4 multi-pass benefit", c4_multipass},
        {"C5 BER hierarchy", c5_hierarchy},
        {"C6 LS failure mode", c6_ls_failure},
        {"C7 tracking", c7_tracking},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        const auto start = Clock::now();
        const Verdict v = run();
        all = all && v.passed;
        std::cout << (v.passed ? "PASS " : "FAIL ") << name << ':' << v.detail.str() << " (" << fmt(seconds_since(start))
                  << "s)" << std::endl;
    }
    return all ? 0 : 1;
}
