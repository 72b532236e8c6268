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

#include "semiblind/detector.hpp"
#include "semiblind/errors.hpp"

namespace semiblind {

Detection hard_detect(const CMat& g, std::span<const cplx> y, Modulation scheme)
{
    require(g.rows() == y.size(), "hard_detect: receive vector length != n_rx");
    const std::size_t n_tx = g.cols();
    const CMat gh = hermitian(g);
    CMat gram = matmul(gh, g);
    double trace = 0.0;
    for (std::size_t i = 0; i < n_tx; ++i)
        trace += gram(i, i).real();

    Detection out;
    if (trace == 0.0) {
        out.degenerate = true;
        out.symbols.assign(n_tx, slice(0.0, scheme));
        return out;
    }
    const double eps = 1e-6 * trace / static_cast<double>(n_tx);
    for (std::size_t i = 0; i < n_tx; ++i)
        gram(i, i) += eps;

    CVec unsliced = solve(gram, matvec(gh, y));
    if (unsliced.empty()) {
        out.degenerate = true;
        unsliced.assign(n_tx, 0.0);
    }
    out.symbols.resize(n_tx);
    for (std::size_t i = 0; i < n_tx; ++i)
        out.symbols[i] = slice(unsliced[i], scheme);
    return out;
}

Detection hard_detect(const EstimatorState& state, std::span<const cplx> y, std::size_t l,
                      std::size_t n_subcarriers, Modulation scheme)
{
    return hard_detect(estimated_response(state, l, n_subcarriers), y, scheme);
}

} // namespace semiblind
