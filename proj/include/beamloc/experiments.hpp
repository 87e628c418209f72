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

#ifndef BEAMLOC_EXPERIMENTS_HPP
#define BEAMLOC_EXPERIMENTS_HPP

#include "beamloc/config.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace beamloc
{
    // Sweep axes ("sweep.<axis>" keys); absent axes take per-experiment defaults
    class SweepAxes
    {
    public:
        // Accepts sweep.lambda_per_m, sweep.k, sweep.beta, sweep.est_noise_dbw, sweep.delta_d_m2, sweep.g0_dbi
        void set(const std::string &key, const std::string &value);
        [[nodiscard]] std::vector<double> get(const std::string &axis, std::vector<double> fallback) const;
        [[nodiscard]] std::vector<int> get_int(const std::string &axis, std::vector<int> fallback) const;
        [[nodiscard]] const std::map<std::string, std::string> &raw() const { return raw_; }
        static bool is_sweep_key(const std::string &key);

    private:
        std::map<std::string, std::string> raw_;
    };

    struct ExperimentSpec
    {
        std::string name;
        Config cfg;
        SweepAxes sweep;
        std::filesystem::path out_dir{"."};
    };

    const std::vector<std::string> &experiment_names();

    // Split "sweep.*" keys from config keys; the rest builds the config
    std::pair<Config, SweepAxes> split_settings(const std::vector<std::pair<std::string, std::string>> &kv);

    // Writes <name>.csv and manifest.txt into out_dir; returns the written paths.
    // Unknown names raise ConfigError("experiment", ...).
    std::vector<std::filesystem::path> run_experiment(const ExperimentSpec &spec);

    // Config echo, sweep axes and run metadata. Config and sweep lines are "key = value", so the file
    // doubles as a --config input for an exact rerun.
    void write_manifest(const std::filesystem::path &path, const std::string &what, const Config &cfg,
                        const SweepAxes &sweep, double wall_seconds);

    // Dictionary rows for one cell size: k, j, theta_k, d_left, d_right
    void write_dictionary_csv(std::ostream &out, double d_a, const Config &cfg);

    [[nodiscard]] std::string version();
}

#endif
