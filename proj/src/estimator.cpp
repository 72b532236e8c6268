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

#include "semiblind/estimator.hpp"
#include "semiblind/detector.hpp"
#include "semiblind/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace semiblind {

namespace {

double sgn(double v)
{
    return static_cast<double>((0.0 < v) - (v < 0.0));
}

double sech_sq(double v)
{
    if (std::abs(v) > 350.0)
        return 0.0;
    const double c = std::cosh(v);
    return 1.0 / (c * c);
}

void check_dims(const ChannelTaps& taps, std::span<const cplx> x, std::span<const cplx> y)
{
    require(x.size() == taps.n_tx, "estimator: transmit vector length != n_tx");
    require(y.size() == taps.n_rx, "estimator: receive vector length != n_rx");
}

bool all_zero(const ChannelTaps& taps)
{
    for (const auto& h : taps.taps)
        for (const auto& v : h.data())
            if (v != cplx{0.0, 0.0})
                return false;
    return true;
}

void check_frame(const EstimatorState& state, const OfdmFrame& frame, std::span<const CVec> y_all)
{
    require(frame.freq_symbols.size() == frame.n_subcarriers, "run_frame: malformed frame");
    require(y_all.size() == frame.n_subcarriers, "run_frame: receive vector count != n_subcarriers");
    require(frame.training_len <= frame.n_subcarriers, "run_frame: training_len exceeds n_subcarriers");
    require(frame.n_tx == state.est_taps.n_tx, "run_frame: frame n_tx differs from the estimator");
}

} // namespace

EstimatorState EstimatorState::initial(std::size_t n_rx, std::size_t n_tx, std::size_t n_paths,
                                       double mu_train, double mu_blind, double anneal_factor)
{
    require(n_rx >= 1 && n_tx >= 1 && n_paths >= 1, "EstimatorState: counts must be >= 1");
    require(mu_train > 0.0 && mu_blind > 0.0, "EstimatorState: step sizes must be > 0");
    require(anneal_factor > 0.0 && anneal_factor <= 1.0, "EstimatorState: anneal_factor must lie in (0, 1]");
    EstimatorState s;
    s.est_taps = ChannelTaps::zeros(n_rx, n_tx, n_paths);
    s.mu_train = mu_train;
    s.mu_blind = mu_blind;
    s.mu_blind_current = mu_blind;
    s.anneal_factor = anneal_factor;
    return s;
}

CMat estimated_response(const EstimatorState& state, std::size_t l, std::size_t n_subcarriers)
{
    return freq_response(state.est_taps, l, n_subcarriers);
}

double instantaneous_cost(const EstimatorState& state, std::span<const cplx> x, std::span<const cplx> y,
                          std::size_t l, std::size_t n_subcarriers)
{
    check_dims(state.est_taps, x, y);
    const CVec model = matvec(estimated_response(state, l, n_subcarriers), x);
    double cost = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        cost += std::norm(y[i] - model[i]);
    return cost;
}

void lms_step(ChannelTaps& taps, double mu, std::span<const cplx> x, std::span<const cplx> y,
              std::size_t l, std::size_t n_subcarriers)
{
    check_dims(taps, x, y);
    const CVec model = matvec(freq_response(taps, l, n_subcarriers), x);
    CVec err(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        err[i] = y[i] - model[i];
    // mu * e x^H is shared by all paths; each path applies the conjugate kernel.
    const CMat grad = outer(err, x);
    for (std::size_t m = 0; m < taps.n_paths(); ++m) {
        const cplx w = mu * std::conj(subcarrier_kernel(m, l, n_subcarriers));
        auto h = taps.taps[m].data();
        auto d = grad.data();
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] += w * d[i];
    }
}

EstimatorState lms_train_update(const EstimatorState& state, std::span<const cplx> x, std::span<const cplx> y,
                                std::size_t l, std::size_t n_subcarriers)
{
    EstimatorState next = state;
    lms_step(next.est_taps, state.mu_train, x, y, l, n_subcarriers);
    return next;
}

EstimatorState lms_blind_update(const EstimatorState& state, std::span<const cplx> y, std::span<const cplx> g_val,
                                std::size_t l, std::size_t n_subcarriers)
{
    EstimatorState next = state;
    lms_step(next.est_taps, state.mu_blind_current, g_val, y, l, n_subcarriers);
    return next;
}

CMat interference_matrix(const CMat& g)
{
    CMat f = matmul(hermitian(g), g);
    for (std::size_t i = 0; i < f.rows(); ++i)
        f(i, i) = 0.0;
    return f;
}

CMat interference_matrix(const EstimatorState& state, std::size_t l, std::size_t n_subcarriers)
{
    return interference_matrix(estimated_response(state, l, n_subcarriers));
}

CVec soft_estimate(const CMat& g, std::span<const cplx> y, std::span<const cplx> x_hat)
{
    require(y.size() == g.rows(), "soft_estimate: receive vector length != n_rx");
    require(x_hat.size() == g.cols(), "soft_estimate: detected vector length != n_tx");
    CVec mf = matvec(hermitian(g), y);
    const CVec isi = matvec(interference_matrix(g), x_hat);
    for (std::size_t i = 0; i < mf.size(); ++i)
        mf[i] -= isi[i];
    return mf;
}

CVec soft_estimate(const EstimatorState& state, std::span<const cplx> y, std::span<const cplx> x_hat,
                   std::size_t l, std::size_t n_subcarriers)
{
    return soft_estimate(estimated_response(state, l, n_subcarriers), y, x_hat);
}

CVec nonlinearity_g(std::span<const cplx> x_soft, const BlindMode& mode, double alpha, double beta,
                    Modulation scheme)
{
    const bool real_only = scheme == Modulation::BPSK;
    const double dd_scale = real_only ? 1.0 : 1.0 / std::sqrt(2.0);
    CVec out(x_soft.size());
    for (std::size_t i = 0; i < x_soft.size(); ++i) {
        const double re = x_soft[i].real();
        const double im = real_only ? 0.0 : x_soft[i].imag();
        if (mode.variant == BlindMode::Variant::DD)
            out[i] = cplx{sgn(re), sgn(im)} * dd_scale;
        else
            out[i] = cplx{alpha * std::tanh(beta * re), alpha * std::tanh(beta * im)};
    }
    return out;
}

double update_alpha(double alpha, double beta, std::span<const cplx> x_soft, std::span<const cplx> target,
                    double mu_alpha)
{
    require(target.size() == x_soft.size(), "update_alpha: target length differs from x_soft");
    double acc = 0.0;
    for (std::size_t i = 0; i < x_soft.size(); ++i) {
        const double tr = std::tanh(beta * x_soft[i].real());
        const double ti = std::tanh(beta * x_soft[i].imag());
        acc += tr * (target[i].real() - alpha * tr) + ti * (target[i].imag() - alpha * ti);
    }
    return alpha + mu_alpha * sgn(acc);
}

double update_alpha(double alpha, double beta, std::span<const cplx> x_soft, double mu_alpha)
{
    return update_alpha(alpha, beta, x_soft, x_soft, mu_alpha);
}

double update_beta(double alpha, double beta, std::span<const cplx> x_soft, double mu_beta)
{
    double acc = 0.0;
    for (const auto& v : x_soft)
        for (const double part : {v.real(), v.imag()})
            acc += part * sech_sq(beta * part) * (part - alpha * std::tanh(beta * part));
    return beta + mu_beta * alpha * acc;
}

FrameReport run_frame(EstimatorState& state, const OfdmFrame& frame, std::span<const CVec> y_all,
                      const BlindMode& mode, std::size_t n_blind_passes, Modulation scheme,
                      const PassObserver& observer)
{
    check_frame(state, frame, y_all);
    const std::size_t n = frame.n_subcarriers;
    FrameReport report;
    report.cold_start = frame.training_len == 0 && all_zero(state.est_taps);

    for (std::size_t l = 0; l < frame.training_len; ++l)
        lms_step(state.est_taps, state.mu_train, frame.freq_symbols[l], y_all[l], l, n);
    state.pass_index = 0;
    state.mu_blind_current = state.mu_blind;
    if (observer)
        observer(0, state);

    const bool aba = mode.variant == BlindMode::Variant::ABA;
    for (std::size_t pass = 1; pass <= n_blind_passes; ++pass) {
        for (std::size_t l = frame.training_len; l < n; ++l) {
            const CMat g = estimated_response(state, l, n);
            const Detection det = hard_detect(g, y_all[l], scheme);
            if (det.degenerate)
                ++report.degenerate_detections;
            CVec soft = soft_estimate(g, y_all[l], det.symbols);
            if (scheme == Modulation::BPSK)
                for (auto& v : soft)
                    v = v.real();
            const CVec virtual_x = nonlinearity_g(soft, mode, state.alpha, state.beta, scheme);
            lms_step(state.est_taps, state.mu_blind_current, virtual_x, y_all[l], l, n);
            if (aba) {
                const double a = update_alpha(state.alpha, state.beta, soft, det.symbols, mode.mu_alpha);
                const double b = update_beta(state.alpha, state.beta, soft, mode.mu_beta);
                state.alpha = a;
                state.beta = b;
            }
        }
        state.mu_blind_current *= state.anneal_factor;
        state.pass_index = pass;
        if (observer)
            observer(pass, state);
    }
    return report;
}

void run_full_training(EstimatorState& state, const OfdmFrame& frame, std::span<const CVec> y_all,
                       std::size_t n_passes, const PassObserver& observer)
{
    check_frame(state, frame, y_all);
    const std::size_t n = frame.n_subcarriers;
    for (std::size_t l = 0; l < n; ++l)
        lms_step(state.est_taps, state.mu_train, frame.freq_symbols[l], y_all[l], l, n);
    state.pass_index = 0;
    state.mu_blind_current = state.mu_blind;
    if (observer)
        observer(0, state);
    for (std::size_t pass = 1; pass <= n_passes; ++pass) {
        for (std::size_t l = 0; l < n; ++l)
            lms_step(state.est_taps, state.mu_blind_current, frame.freq_symbols[l], y_all[l], l, n);
        state.mu_blind_current *= state.anneal_factor;
        state.pass_index = pass;
        if (observer)
            observer(pass, state);
    }
}

LsResult ls_estimate(std::span<const CVec> training_x, std::span<const CVec> training_y,
                     std::span<const std::size_t> indices, std::size_t n_paths, std::size_t n_subcarriers)
{
    require(!indices.empty(), "ls_estimate: no subcarriers given");
    require(n_paths >= 1, "ls_estimate: n_paths must be >= 1");
    require(training_x.size() == indices.size() && training_y.size() == indices.size(),
            "ls_estimate: training data and index counts differ");
    const std::size_t n_tx = training_x.front().size();
    const std::size_t n_rx = training_y.front().size();
    require(n_tx >= 1 && n_rx >= 1, "ls_estimate: empty training vectors");
    const std::size_t unknowns = n_tx * n_paths;

    // Row for subcarrier l, column (p, t): exp(-j2 pi p l / N) x_l[t]. The
    // same design matrix serves every receive antenna.
    Eigen::MatrixXcd a(indices.size(), unknowns);
    Eigen::MatrixXcd b(indices.size(), n_rx);
    for (std::size_t row = 0; row < indices.size(); ++row) {
        const std::size_t l = indices[row];
        require(l < n_subcarriers, "ls_estimate: subcarrier index out of range");
        require(training_x[row].size() == n_tx && training_y[row].size() == n_rx,
                "ls_estimate: inconsistent vector lengths");
        for (std::size_t p = 0; p < n_paths; ++p) {
            const cplx w = subcarrier_kernel(p, l, n_subcarriers);
            for (std::size_t t = 0; t < n_tx; ++t)
                a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p * n_tx + t)) = w * training_x[row][t];
        }
        for (std::size_t r = 0; r < n_rx; ++r)
            b(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(r)) = training_y[row][r];
    }

    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
    const Eigen::MatrixXcd solution = cod.solve(b);

    LsResult out;
    out.rank = static_cast<std::size_t>(cod.rank());
    out.rank_deficient = indices.size() < unknowns || out.rank < unknowns;
    out.taps = ChannelTaps::zeros(n_rx, n_tx, n_paths);
    for (std::size_t p = 0; p < n_paths; ++p)
        for (std::size_t t = 0; t < n_tx; ++t)
            for (std::size_t r = 0; r < n_rx; ++r)
                out.taps.taps[p](r, t) = solution(static_cast<Eigen::Index>(p * n_tx + t), static_cast<Eigen::Index>(r));
    return out;
}

} // namespace semiblind
