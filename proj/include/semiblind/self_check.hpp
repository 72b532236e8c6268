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

#ifndef SEMIBLIND_SELF_CHECK_HPP
#define SEMIBLIND_SELF_CHECK_HPP

#include "semiblind/channel.hpp"
#include "semiblind/numerics.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace semiblind {

// Each oracle recomputes a library result by an independent, slow route and
// reports the worst error it measured.
struct OracleResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SelfCheckReport {
    std::vector<OracleResult> results;
    bool all_passed() const;
};

using FreqResponseFn = std::function<CMat(const ChannelTaps&, std::size_t, std::size_t)>;

OracleResult check_dft_direct_sum();
OracleResult check_dft_round_trip();
OracleResult check_convolution();
// Noiseless max_l ||y_l - H~_l x_l|| / ||y_l|| through modulate, channel
// and demodulate. The response under test is injectable.
OracleResult check_subcarrier_equivalence(const FreqResponseFn& response);
OracleResult check_subcarrier_equivalence();
OracleResult check_lms_gradient();
OracleResult check_ls_recovery();

SelfCheckReport self_check();

void print_report(std::ostream& out, const SelfCheckReport& report);

} // namespace semiblind

#endif
