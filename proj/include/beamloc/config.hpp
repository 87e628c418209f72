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

#ifndef BEAMLOC_CONFIG_HPP
#define BEAMLOC_CONFIG_HPP

#include "beamloc/units.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace beamloc
{
    // Physical and system parameters. Linear SI units throughout.
    struct NetworkConfig
    {
        double lambda = 0.01;                           // BS density per meter of road
        double p_t = 1.0;                               // transmit power, W
        double h_b = 10.0;                              // BS height, m
        double f_c = 28e9;                              // carrier, Hz
        double k_pl = 0.0;                              // path-loss coefficient, set by Config::finalize()
        double alpha_los = 2.0;                         // path-loss exponents
        double alpha_nlos = 4.0;
        int n_los = 3;                                  // Nakagami shape
        int n_nlos = 2;
        double d_s = 20.0;                              // LOS ball radius, m
        double bandwidth = 1e9;                         // Hz
        double noise_psd = dbm_to_watts(-174.0);        // W/Hz
        double g0 = db_to_linear(15.0);                 // reference gain
        double eps_sidelobe = 0.01;                     // sidelobe fraction
        double t_frame = 1e-3;                          // service phase T_F, s
        double t_init = 1e-4;                           // initial access T_I, s

        [[nodiscard]] double noise_power() const { return noise_psd * bandwidth; }
        [[nodiscard]] double sidelobe_gain() const { return g0 * eps_sidelobe; }
        void validate() const;
    };

    // Estimator side of the link
    struct LocalizationConfig
    {
        double est_noise = dbw_to_watts(-8.0); // noise power at the ranging / AoA estimator, W
        int ue_elements = 32;                  // UE aperture for AoA estimation, 0: beamwidth_to_elements(theta_U)
        double nu_fraction = 0.5;              // misalignment threshold nu = nu_fraction * theta_U
        void validate() const;
    };

    struct AccessPolicy
    {
        double delta_bs = 0.1;              // per-step beam-selection error cap
        double delta_ma = 0.1;              // per-step misalignment cap
        double delta_d = 0.01;              // termination: distance variance, m^2
        double delta_psi = 0.25;            // termination: AoA variance, rad^2
        int max_iter = 200;                 // step budget
        double symbol_duration = 14.3e-6;   // s
        double initial_sigma_d2 = 2.0;      // coarse low-band estimate, m^2
        double initial_theta_u = kPi / 2.0; // quasi-omni start, rad
        int ue_levels = 8;                  // UE candidates pi/2^i, i = 1..ue_levels
        void validate() const;
    };

    struct OptimizationSpec
    {
        double r0 = 100e6;            // rate threshold, bit/s
        double eps_bs = 0.1;          // cap on average beam-selection error
        double eps_ma = 0.1;          // cap on average misalignment error
        double beta_step = 0.02;      // grid over (0, 1]
        double tie_tolerance = 1e-8;  // objective values closer than this are ties
        double theta_u = 0.0;         // fixed UE beamwidth, 0: data-phase rule per k
        std::vector<int> k_candidates; // empty: 1..n_max
        void validate() const;
    };

    struct MonteCarloConfig
    {
        std::uint64_t seed = 1;
        std::uint64_t trials = 100000;
        unsigned threads = 1;
    };

    struct Config
    {
        NetworkConfig net;
        LocalizationConfig loc;
        AccessPolicy access;
        OptimizationSpec opt;
        MonteCarloConfig mc;
        int n_max = 32;            // largest dictionary size
        double beta = 0.5;         // default partition factor
        double threshold_db = 5.0; // default SINR threshold

        Config() { finalize(); }

        // Derive dependent values (path-loss coefficient) and validate
        void finalize();
        void validate() const;

        // Apply one dotted key. Values are in config units (dBm, dBm/Hz, dBi, dBW, per km).
        void set(const std::string &key, const std::string &value);

        // Echo of every key in config units, sorted by key
        [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;

    private:
        bool k_pl_explicit_ = false;
    };

    // Read "key = value" lines. '#' starts a comment. Returns pairs in file order.
    std::vector<std::pair<std::string, std::string>> read_key_values(std::istream &in);

    // Build a config from key-value pairs; unknown keys raise ConfigError
    Config make_config(const std::vector<std::pair<std::string, std::string>> &kv);

    // Comma separated list of integers, also accepts a:b ranges ("1:32" or "2,8,32")
    std::vector<int> parse_int_list(const std::string &key, const std::string &text);
    std::vector<double> parse_double_list(const std::string &key, const std::string &text);
}

#endif
