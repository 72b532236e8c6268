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

// semiblind run|sweep|check
//
// Exit codes: 0 success, 1 configuration error, 2 self-check failure.

#include "semiblind/config.hpp"
#include "semiblind/errors.hpp"
#include "semiblind/harness.hpp"
#include "semiblind/self_check.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

using namespace semiblind;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSelfCheck = 2;

struct ScenarioOptions {
    std::string config_path;
    std::string out_path;
    std::map<std::string, std::string> values;
};

void add_scenario_options(CLI::App& cmd, ScenarioOptions& opts)
{
    cmd.add_option("--config", opts.config_path, "key=value file supplying defaults");
    cmd.add_option("--out", opts.out_path, "CSV output path (stdout if omitted)");
    for (const auto& key : setting_keys()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        cmd.add_option(flag, opts.values[key]);
    }
}

RunSettings resolve(CLI::App& cmd, const ScenarioOptions& opts)
{
    RunSettings s;
    if (!opts.config_path.empty())
        load_settings_file(s, opts.config_path);
    for (const auto& [key, value] : opts.values) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (cmd.get_option(flag)->count() > 0)
            apply_setting(s, key, value);
    }
    return s;
}

void emit(const ScenarioOptions& opts, const std::vector<AggregateRow>& rows)
{
    if (opts.out_path.empty()) {
        write_csv(std::cout, rows);
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out)
        throw ConfigError("cannot open output file '" + opts.out_path + "'");
    write_csv(out, rows);
}

void warn(const SimConfig& c)
{
    for (const auto& w : config_warnings(c))
        std::cerr << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semi-blind MIMO-OFDM channel estimation simulator"};
    app.require_subcommand(1);

    ScenarioOptions run_opts;
    auto* run = app.add_subcommand("run", "Run a single scenario and print every (frame, pass) cell");
    add_scenario_options(*run, run_opts);

    ScenarioOptions sweep_opts;
    bool all_passes = false;
    auto* sweep = app.add_subcommand("sweep", "Sweep Eb/N0 points and modes");
    add_scenario_options(*sweep, sweep_opts);
    sweep->add_flag("--all-passes", all_passes, "emit every pass instead of the last one");

    app.add_subcommand("check", "Run the built-in numerical oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (app.got_subcommand("check")) {
            const SelfCheckReport report = self_check();
            print_report(std::cout, report);
            return report.all_passed() ? 0 : kExitSelfCheck;
        }
        if (app.got_subcommand("run")) {
            const RunSettings s = resolve(*run, run_opts);
            if (s.ebn0_db.size() != 1 || s.modes.size() != 1)
                throw ConfigError("run takes a single --ebn0-db value and a single --mode; use sweep for lists");
            warn(s.config);
            emit(run_opts, aggregate(s.config, run_scenario(s.config)));
            return 0;
        }
        const RunSettings s = resolve(*sweep, sweep_opts);
        warn(s.config);
        emit(sweep_opts, run_sweep(s.config, SweepRequest{s.ebn0_db, s.modes, all_passes}));
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ContractViolation& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
}
