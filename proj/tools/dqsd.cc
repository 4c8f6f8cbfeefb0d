// Copyright 2026 The dqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dqsd/cli.h"

int main(int argc, char **argv) {
    namespace cli = dqsd::cli;
    CLI::App app{"Device-independent quantum state discrimination simulator"};
    app.set_version_flag("--version", "dqsd 1.0.0");

    std::string command, config_path;
    std::optional<std::string> strategy, ensemble, shots, seed, tolerance, grid_step, output, format, trials,
        counts_output;
    bool mdi_probe = false;

    app.add_option("command", command, "certify | discriminate | sweep | demo");
    app.add_option("--config", config_path, "key = value configuration file; flags override it");
    app.add_option("--strategy", strategy, "honest | conjugated | werner:P | classical:FILE");
    app.add_option("--ensemble", ensemble, "members 'prior@state' separated by ';'");
    app.add_option("--shots", shots, "shots per input tuple, or 'exact'");
    app.add_option("--seed", seed, "run seed");
    app.add_option("--tolerance", tolerance, "certification tolerance, or 'auto'");
    app.add_option("--grid-step", grid_step, "sweep step for q and c");
    app.add_option("--output", output, "artifact path (default stdout)");
    app.add_option("--format", format, "csv | jsonl");
    app.add_option("--trials", trials, "discrimination trials");
    app.add_option("--counts-output", counts_output, "write sampled counts as CSV");
    auto *probe_flag = app.add_flag("--mdi-probe", mdi_probe, "run the trusted |R> probe when needed");

    CLI11_PARSE(app, argc, argv);

    cli::RunConfig config;
    try {
        if (!config_path.empty()) {
            cli::apply_config_file(config, config_path);
        }
        auto set = [&](const char *key, const std::optional<std::string> &value) {
            if (value) {
                cli::set_field(config, key, *value, "");
            }
        };
        if (!command.empty()) {
            cli::set_field(config, "command", command, "");
        }
        set("strategy", strategy);
        set("ensemble", ensemble);
        set("shots", shots);
        set("seed", seed);
        set("tolerance", tolerance);
        set("grid_step", grid_step);
        set("output", output);
        set("format", format);
        set("trials", trials);
        set("counts_output", counts_output);
        if (probe_flag->count()) {
            config.mdi_probe = mdi_probe;
        }
    } catch (const cli::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigError;
    }
    return cli::run(config, std::cout);
}
