// SPDX-License-Identifier: Apache-2.0
//
// beamloc: localization-aided mm-wave initial access and coverage analysis
// Copyright (C) 2026 The beamloc authors
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

// Command-line front end: run <experiment>, dump-dictionary, optimize, validate.
// Exit codes: 0 ok, 2 configuration error, 3 numeric error.

#include "beamloc/config.hpp"
#include "beamloc/errors.hpp"
#include "beamloc/experiments.hpp"
#include "beamloc/format.hpp"
#include "beamloc/optimizer.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    namespace fs = std::filesystem;
    using KeyValues = std::vector<std::pair<std::string, std::string>>;

    constexpr int kConfigExit = 2;
    constexpr int kNumericExit = 3;

    // "--section.key=value" or "--section.key value"; everything else goes to CLI11
    KeyValues extract_overrides(std::vector<std::string> &args)
    {
        KeyValues kv;
        std::vector<std::string> rest;
        for (std::size_t i = 0; i < args.size(); ++i)
        {
            const std::string &a = args[i];
            if (a.rfind("--", 0) != 0 || a.find('.') == std::string::npos || a.find('.') > a.find('='))
            {
                rest.push_back(a);
                continue;
            }
            const auto eq = a.find('=');
            if (eq != std::string::npos)
                kv.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
            else if (i + 1 < args.size())
                kv.emplace_back(a.substr(2), args[++i]);
            else
                throw beamloc::ConfigError(a.substr(2), "missing value");
        }
        args = std::move(rest);
        return kv;
    }

    struct Common
    {
        std::string config_path;
        std::string out = "out";
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
        std::optional<unsigned> threads;
    };

    std::pair<beamloc::Config, beamloc::SweepAxes> load(const Common &c, const KeyValues &overrides)
    {
        KeyValues kv;
        if (!c.config_path.empty())
        {
            std::ifstream f(c.config_path);
            if (!f)
                throw beamloc::ConfigError("config", "cannot read " + c.config_path);
            kv = beamloc::read_key_values(f);
        }
        kv.insert(kv.end(), overrides.begin(), overrides.end());
        if (c.seed)
            kv.emplace_back("montecarlo.seed", std::to_string(*c.seed));
        if (c.trials)
            kv.emplace_back("montecarlo.trials", std::to_string(*c.trials));
        if (c.threads)
            kv.emplace_back("montecarlo.threads", std::to_string(*c.threads));
        return beamloc::split_settings(kv);
    }

    void add_common(CLI::App &app, Common &c)
    {
        app.add_option("--config", c.config_path, "key = value file")->check(CLI::ExistingFile);
        app.add_option("--out", c.out, "output directory");
        app.add_option("--seed", c.seed, "Monte Carlo seed");
        app.add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        app.add_option("--threads", c.threads, "worker threads, 0: all cores");
    }

    void echo(const beamloc::Config &cfg, const beamloc::SweepAxes &sweep)
    {
        for (const auto &[k, v] : cfg.entries())
            std::cout << k << " = " << v << '\n';
        for (const auto &[k, v] : sweep.raw())
            std::cout << k << " = " << v << '\n';
    }
}

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    KeyValues overrides;
    try
    {
        overrides = extract_overrides(args);
    }
    catch (const beamloc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigExit;
    }

    CLI::App app{"beamloc " + beamloc::version() + ": localization-aided mm-wave access and coverage", "beamloc"};
    app.require_subcommand(1);
    Common common;

    std::string experiment;
    auto *run = app.add_subcommand("run", "run one experiment, write <name>.csv and manifest.txt");
    run->add_option("experiment", experiment, "experiment name")
        ->required()
        ->check(CLI::IsMember(beamloc::experiment_names()));
    add_common(*run, common);

    std::optional<double> cell_size;
    auto *dump = app.add_subcommand("dump-dictionary", "write the beam dictionary of one cell");
    dump->add_option("--cell-size", cell_size, "cell size in m (default 1 / (2 lambda))")
        ->check(CLI::PositiveNumber);
    add_common(*dump, common);

    auto *opt = app.add_subcommand("optimize", "optimal dictionary size and partition factor");
    add_common(*opt, common);

    auto *val = app.add_subcommand("validate", "check a configuration and echo the resolved keys");
    add_common(*val, common);

    try
    {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigExit;
    }

    try
    {
        auto [cfg, sweep] = load(common, overrides);
        const fs::path out(common.out);

        if (*run)
        {
            beamloc::ExperimentSpec spec{experiment, cfg, sweep, out};
            for (const auto &p : beamloc::run_experiment(spec))
                std::cout << p.string() << '\n';
        }
        else if (*dump)
        {
            fs::create_directories(out);
            const double d_a = cell_size ? *cell_size : 1.0 / (2.0 * cfg.net.lambda);
            const fs::path p = out / "dictionary.csv";
            std::ofstream f(p);
            if (!f)
                throw beamloc::ConfigError("out", "cannot write " + p.string());
            beamloc::write_dictionary_csv(f, d_a, cfg);
            beamloc::write_manifest(out / "manifest.txt", "dump-dictionary cell_size=" + beamloc::format_double(d_a),
                                    cfg, sweep, 0.0);
            std::cout << p.string() << '\n';
        }
        else if (*opt)
        {
            fs::create_directories(out);
            const auto start = std::chrono::steady_clock::now();
            const auto r = beamloc::optimize_beamwidth(cfg);
            const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const fs::path p = out / "per_k_table.csv";
            std::ofstream f(p);
            if (!f)
                throw beamloc::ConfigError("out", "cannot write " + p.string());
            beamloc::write_per_k_table(f, r);
            beamloc::write_manifest(out / "manifest.txt", "optimize", cfg, sweep, wall);
            using beamloc::format_double;
            std::cout << "feasible = " << (r.feasible ? "true" : "false") << '\n'
                      << "k_star = " << r.k_star << '\n'
                      << "beta_star = " << format_double(r.beta_star) << '\n'
                      << "theta_star = " << format_double(r.theta_star) << '\n'
                      << "theta_u = " << format_double(r.theta_u) << '\n'
                      << "objective = " << format_double(r.objective) << '\n'
                      << "feasible_set_size = " << r.feasible_set_size << '\n';
        }
        else if (*val)
        {
            echo(cfg, sweep);
            std::cout << "# config ok\n";
        }
    }
    catch (const beamloc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigExit;
    }
    catch (const beamloc::DomainError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigExit;
    }
    catch (const beamloc::NumericError &e)
    {
        std::cerr << "numeric error in " << e.where() << ": " << e.what() << '\n';
        return kNumericExit;
    }
    return 0;
}
