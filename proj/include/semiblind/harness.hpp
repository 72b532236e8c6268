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

#ifndef SEMIBLIND_HARNESS_HPP
#define SEMIBLIND_HARNESS_HPP

#include "semiblind/channel.hpp"
#include "semiblind/modulation.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semiblind {

enum class Mode { FullTraining, TrainingOnly, DD, ABA, LS, PerfectCSI };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

struct SimConfig {
    std::size_t n_tx = 2;
    std::size_t n_rx = 4;
    std::size_t n_subcarriers = 512;
    std::size_t cp_len = 16;
    std::size_t n_paths = 8;
    double decay = 2.0;
    double doppler_rho = 1.0;
    std::size_t training_len = 128;
    Modulation modulation = Modulation::BPSK;
    double ebn0_db = 10.0;
    // Overrides the Eb/N0-derived noise variance when set.
    std::optional<double> noise_var;
    Mode mode = Mode::DD;
    std::size_t n_blind_passes = 3;
    double mu_train = 0.03;
    double mu_blind = 0.015;
    double anneal_factor = 0.5;
    double mu_alpha = 0.01;
    double mu_beta = 0.01;
    std::size_t n_frames = 1;
    std::size_t n_trials = 20;
    std::uint64_t seed = 1;
    std::size_t threads = 0; // 0: one worker per hardware thread
};

// Throws ConfigError on an unusable configuration.
void validate(const SimConfig& config);
// Non-fatal problems, e.g. a cyclic prefix shorter than the channel memory.
std::vector<std::string> config_warnings(const SimConfig& config);

// Per-antenna unit symbol energy: noise_var = (1 / bits_per_symbol) * 10^(-EbN0/10).
double noise_variance(const SimConfig& config);

// Seed of trial t's private random stream; depends only on (seed, t).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// sum_p ||H_p - H^_p||_F^2 / sum_p ||H_p||_F^2
double channel_mse(const ChannelTaps& true_taps, const ChannelTaps& est_taps);

struct MetricsRecord {
    Mode mode = Mode::DD;
    std::size_t trial = 0;
    std::size_t frame = 1; // 1-based
    std::size_t pass = 0;  // 0: after the training sweep
    double channel_mse = 0.0;
    std::size_t bit_errors = 0;
    std::size_t bits_total = 0;
    bool cold_start = false;
    bool rank_deficient = false;
};

// Records for every trial, frame and pass of config.mode, ordered by trial.
std::vector<MetricsRecord> run_scenario(const SimConfig& config);

struct AggregateRow {
    Mode mode = Mode::DD;
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    double ebn0_db = 0.0;
    std::size_t frame = 1;
    std::size_t pass = 0;
    double channel_mse = 0.0;
    double channel_mse_se = 0.0;
    double ber = 0.0;
    double ber_se = 0.0;
    std::size_t bits_total = 0;
    std::size_t trials = 0;
};

// Mean and standard error over trials for each (frame, pass) cell.
std::vector<AggregateRow> aggregate(const SimConfig& config, const std::vector<MetricsRecord>& records);

struct SweepRequest {
    std::vector<double> ebn0_db;
    std::vector<Mode> modes;
    bool all_passes = false; // false: only the last pass of each frame
};

std::vector<AggregateRow> run_sweep(const SimConfig& base, const SweepRequest& request);

inline constexpr std::string_view kCsvHeader =
    "mode,n_tx,n_rx,ebn0_db,frame,pass,channel_mse,ber,bits_total,trials";

void write_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

} // namespace semiblind

#endif
