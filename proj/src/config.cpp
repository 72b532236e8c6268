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

#include "semiblind/config.hpp"
#include "semiblind/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace semiblind {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text)
{
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
    return value;
}

using Setter = std::function<void(RunSettings&, std::string_view key, std::string_view value)>;

template <class T>
Setter count_field(T SimConfig::*field)
{
    return [field](RunSettings& s, std::string_view k, std::string_view v) { s.config.*field = parse_number<T>(k, v); };
}

Setter real_field(double SimConfig::*field)
{
    return [field](RunSettings& s, std::string_view k, std::string_view v) {
        s.config.*field = parse_number<double>(k, v);
    };
}

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"n_tx", count_field(&SimConfig::n_tx)},
        {"n_rx", count_field(&SimConfig::n_rx)},
        {"n_subcarriers", count_field(&SimConfig::n_subcarriers)},
        {"cp_len", count_field(&SimConfig::cp_len)},
        {"n_paths", count_field(&SimConfig::n_paths)},
        {"decay", real_field(&SimConfig::decay)},
        {"doppler_rho", real_field(&SimConfig::doppler_rho)},
        {"training_len", count_field(&SimConfig::training_len)},
        {"modulation",
         [](RunSettings& s, std::string_view k, std::string_view v) {
             const auto m = parse_modulation(trim(v));
             if (!m)
                 throw ConfigError("invalid value '" + std::string(v) + "' for " + std::string(k));
             s.config.modulation = *m;
         }},
        {"ebn0_db",
         [](RunSettings& s, std::string_view k, std::string_view v) {
             std::vector<double> points;
             for (auto item : split_list(v))
                 points.push_back(parse_number<double>(k, item));
             s.ebn0_db = points;
             s.config.ebn0_db = points.front();
         }},
        {"noise_var",
         [](RunSettings& s, std::string_view k, std::string_view v) { s.config.noise_var = parse_number<double>(k, v); }},
        {"mode",
         [](RunSettings& s, std::string_view k, std::string_view v) {
             std::vector<Mode> modes;
             for (auto item : split_list(v)) {
                 const auto m = parse_mode(item);
                 if (!m)
                     throw ConfigError("invalid value '" + std::string(item) + "' for " + std::string(k));
                 modes.push_back(*m);
             }
             s.modes = modes;
             s.config.mode = modes.front();
         }},
        {"n_blind_passes", count_field(&SimConfig::n_blind_passes)},
        {"mu_train", real_field(&SimConfig::mu_train)},
        {"mu_blind", real_field(&SimConfig::mu_blind)},
        {"anneal_factor", real_field(&SimConfig::anneal_factor)},
        {"mu_alpha", real_field(&SimConfig::mu_alpha)},
        {"mu_beta", real_field(&SimConfig::mu_beta)},
        {"n_frames", count_field(&SimConfig::n_frames)},
        {"n_trials", count_field(&SimConfig::n_trials)},
        {"seed", count_field(&SimConfig::seed)},
        {"threads", count_field(&SimConfig::threads)},
    };
    return table;
}

} // namespace

const std::vector<std::string>& setting_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters())
            k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(RunSettings& settings, std::string_view key, std::string_view value)
{
    std::string normalized(trim(key));
    std::replace(normalized.begin(), normalized.end(), '-', '_');
    const auto it = setters().find(normalized);
    if (it == setters().end())
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    it->second(settings, normalized, value);
}

void load_settings(RunSettings& settings, std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_setting(settings, view.substr(0, eq), trim(view.substr(eq + 1)));
    }
}

void load_settings_file(RunSettings& settings, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    load_settings(settings, in);
}

} // namespace semiblind
