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

#ifndef SEMIBLIND_CONFIG_HPP
#define SEMIBLIND_CONFIG_HPP

#include "semiblind/harness.hpp"

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace semiblind {

// A scenario plus the lists a sweep iterates over. ebn0_db and modes may
// hold several values; `run` requires exactly one of each.
struct RunSettings {
    SimConfig config;
    std::vector<double> ebn0_db{10.0};
    std::vector<Mode> modes{Mode::DD};
};

// Keys accepted by apply_setting, spelled with underscores. Dashes are
// accepted as well ("n-tx" == "n_tx").
const std::vector<std::string>& setting_keys();

// Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunSettings& settings, std::string_view key, std::string_view value);

// Plain-text "key = value" lines; '#' starts a comment.
void load_settings(RunSettings& settings, std::istream& in);
void load_settings_file(RunSettings& settings, const std::string& path);

} // namespace semiblind

#endif
