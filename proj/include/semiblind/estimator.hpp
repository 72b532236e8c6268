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

#ifndef SEMIBLIND_ESTIMATOR_HPP
#define SEMIBLIND_ESTIMATOR_HPP

#include "semiblind/channel.hpp"
#include "semiblind/modulation.hpp"
#include "semiblind/numerics.hpp"
#include "semiblind/ofdm.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace semiblind {

/// Time-domain LMS channel estimator state.
///
/// The estimator works directly on the per-path matrices H_p. Every
/// subcarrier l contributes one stochastic-gradient step on
/// ||y_l - (sum_p H_p exp(-j2 pi p l / N)) x_l||^2, using known training
/// symbols first and then virtual training derived from the detector
/// (decision-directed) or from an adaptive tanh nonlinearity (Bussgang).
///
/// mu_blind is the base blind step. Within a frame the blind step starts at
/// mu_blind and is multiplied by anneal_factor after every blind pass;
/// mu_blind_current holds the step the next pass would use.
struct EstimatorState {
    ChannelTaps est_taps;
    double alpha = 1.0;
    double beta = 1.0;
    double mu_train = 0.03;
    double mu_blind = 0.015;
    double anneal_factor = 0.5;
    double mu_blind_current = 0.015;
    std::size_t pass_index = 0;

    // Zero taps, alpha = beta = 1.
    static EstimatorState initial(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths,
                                  double mu_train, double mu_blind, double anneal_factor);
};

struct BlindMode {
    enum class Variant { DD, ABA };
    Variant variant = Variant::DD;
    double mu_alpha = 0.01; // ignored by DD
    double mu_beta = 0.01;  // ignored by DD
};

// G_l, the current frequency-domain channel estimate on subcarrier l.
CMat estimated_response(const EstimatorState& state, std::size_t l, std::size_t n_subcarriers);

double instantaneous_cost(const EstimatorState& state, std::span<const cplx> x, std::span<const cplx> y,
                          std::size_t l, std::size_t n_subcarriers);

// In-place LMS step on the taps:
// H_m += mu * e x^H exp(+j2 pi m l / N), e = y - G_l x.
void lms_step(ChannelTaps& taps, double mu, std::span<const cplx> x, std::span<const cplx> y,
              std::size_t l, std::size_t n_subcarriers);

EstimatorState lms_train_update(const EstimatorState& state, std::span<const cplx> x, std::span<const cplx> y,
                                std::size_t l, std::size_t n_subcarriers);

// Same step as lms_train_update with the virtual symbol g_val and the
// current blind step size.
EstimatorState lms_blind_update(const EstimatorState& state, std::span<const cplx> y, std::span<const cplx> g_val,
                                std::size_t l, std::size_t n_subcarriers);

// [G^H G] with the diagonal zeroed.
CMat interference_matrix(const CMat& g);
CMat interference_matrix(const EstimatorState& state, std::size_t l, std::size_t n_subcarriers);

// x~ = G^H y - F x^, unnormalized matched filter with hard-decision
// inter-stream interference removed.
CVec soft_estimate(const CMat& g, std::span<const cplx> y, std::span<const cplx> x_hat);
CVec soft_estimate(const EstimatorState& state, std::span<const cplx> y, std::span<const cplx> x_hat,
                   std::size_t l, std::size_t n_subcarriers);

// DD: sgn per quadrature scaled onto the constellation (sgn(0) = 0).
// ABA: alpha * tanh(beta * .) per quadrature. BPSK uses the real part only.
CVec nonlinearity_g(std::span<const cplx> x_soft, const BlindMode& mode, double alpha, double beta,
                    Modulation scheme);

// alpha + mu_alpha * sgn(sum_i tanh(b x_i) (x_i - a tanh(b x_i))), real and
// imaginary parts summed together.
double update_alpha(double alpha, double beta, std::span<const cplx> x_soft, double mu_alpha);
double update_alpha(double alpha, double beta, std::span<const cplx> x_soft, std::span<const cplx> target,
                    double mu_alpha);

// beta + mu_beta * alpha * sum_i x_i sech^2(b x_i) (x_i - a tanh(b x_i)).
double update_beta(double alpha, double beta, std::span<const cplx> x_soft, double mu_beta);

struct FrameReport {
    bool cold_start = false;
    std::size_t degenerate_detections = 0;
};

// Called with pass 0 after the training sweep and with pass n after the
// n-th blind pass.
using PassObserver = std::function<void(std::size_t pass, const EstimatorState&)>;

// Training sweep over subcarriers [0, training_len), then n_blind_passes
// blind sweeps over [training_len, N). State carries over between frames.
FrameReport run_frame(EstimatorState& state, const OfdmFrame& frame, std::span<const CVec> y_all,
                      const BlindMode& mode, std::size_t n_blind_passes, Modulation scheme,
                      const PassObserver& observer = {});

// Genie schedule: every subcarrier's symbol is known. One sweep over all
// subcarriers with mu_train, then n_passes annealed sweeps with the blind
// step size, all using the true symbols.
void run_full_training(EstimatorState& state, const OfdmFrame& frame, std::span<const CVec> y_all,
                       std::size_t n_passes, const PassObserver& observer = {});

struct LsResult {
    ChannelTaps taps;
    std::size_t rank = 0;
    bool rank_deficient = false;
};

// Least-squares fit of all taps to the given subcarriers. Rank-deficient
// problems return the minimum-norm solution with rank_deficient set.
LsResult ls_estimate(std::span<const CVec> training_x, std::span<const CVec> training_y,
                     std::span<const std::size_t> indices, std::size_t n_paths, std::size_t n_subcarriers);

} // namespace semiblind

#endif
