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

#include "beamloc/config.hpp"
#include "beamloc/errors.hpp"
#include "beamloc/format.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <map>

namespace beamloc
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        double to_double(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            double v = 0.0;
            const auto *first = t.data();
            const auto *last = t.data() + t.size();
            if (!t.empty() && *first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last || !std::isfinite(v))
                throw ConfigError(key, "expected a finite number, got '" + text + "'");
            return v;
        }

        long long to_integer(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            long long v = 0;
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || ptr != t.data() + t.size())
                throw ConfigError(key, "expected an integer, got '" + text + "'");
            return v;
        }

        int to_int(const std::string &key, const std::string &text)
        {
            const long long v = to_integer(key, text);
            if (v < -2147483647LL || v > 2147483647LL)
                throw ConfigError(key, "integer out of range");
            return static_cast<int>(v);
        }

        struct KeyDef
        {
            std::function<void(Config &, const std::string &, const std::string &)> set;
            std::function<std::string(const Config &)> get;
        };

        template <class Get, class Set>
        KeyDef real(Get get, Set set)
        {
            return {[set](Config &c, const std::string &k, const std::string &v)
                    { set(c, to_double(k, v)); },
                    [get](const Config &c)
                    { return format_double(get(c)); }};
        }

        template <class Get, class Set>
        KeyDef integer(Get get, Set set)
        {
            return {[set](Config &c, const std::string &k, const std::string &v)
                    { set(c, to_int(k, v)); },
                    [get](const Config &c)
                    { return std::to_string(get(c)); }};
        }

        const std::map<std::string, KeyDef> &key_table()
        {
            static const std::map<std::string, KeyDef> table = {
                {"network.lambda_per_km", real([](const Config &c) { return c.net.lambda * 1e3; },
                                               [](Config &c, double v) { c.net.lambda = v / 1e3; })},
                {"network.tx_power_dbm", real([](const Config &c) { return watts_to_dbm(c.net.p_t); },
                                              [](Config &c, double v) { c.net.p_t = dbm_to_watts(v); })},
                {"network.bs_height_m", real([](const Config &c) { return c.net.h_b; },
                                             [](Config &c, double v) { c.net.h_b = v; })},
                {"network.carrier_hz", real([](const Config &c) { return c.net.f_c; },
                                            [](Config &c, double v) { c.net.f_c = v; })},
                {"network.alpha_los", real([](const Config &c) { return c.net.alpha_los; },
                                           [](Config &c, double v) { c.net.alpha_los = v; })},
                {"network.alpha_nlos", real([](const Config &c) { return c.net.alpha_nlos; },
                                            [](Config &c, double v) { c.net.alpha_nlos = v; })},
                {"network.nakagami_los", integer([](const Config &c) { return c.net.n_los; },
                                                 [](Config &c, int v) { c.net.n_los = v; })},
                {"network.nakagami_nlos", integer([](const Config &c) { return c.net.n_nlos; },
                                                  [](Config &c, int v) { c.net.n_nlos = v; })},
                {"network.los_radius_m", real([](const Config &c) { return c.net.d_s; },
                                              [](Config &c, double v) { c.net.d_s = v; })},
                {"network.bandwidth_hz", real([](const Config &c) { return c.net.bandwidth; },
                                              [](Config &c, double v) { c.net.bandwidth = v; })},
                {"network.noise_psd_dbm_hz", real([](const Config &c) { return watts_to_dbm(c.net.noise_psd); },
                                                  [](Config &c, double v) { c.net.noise_psd = dbm_to_watts(v); })},
                {"antenna.g0_dbi", real([](const Config &c) { return linear_to_db(c.net.g0); },
                                        [](Config &c, double v) { c.net.g0 = db_to_linear(v); })},
                {"antenna.sidelobe_eps", real([](const Config &c) { return c.net.eps_sidelobe; },
                                              [](Config &c, double v) { c.net.eps_sidelobe = v; })},
                {"antenna.ue_elements", integer([](const Config &c) { return c.loc.ue_elements; },
                                                [](Config &c, int v) { c.loc.ue_elements = v; })},
                {"frame.t_frame_s", real([](const Config &c) { return c.net.t_frame; },
                                         [](Config &c, double v) { c.net.t_frame = v; })},
                {"frame.t_init_s", real([](const Config &c) { return c.net.t_init; },
                                        [](Config &c, double v) { c.net.t_init = v; })},
                {"frame.beta", real([](const Config &c) { return c.beta; },
                                    [](Config &c, double v) { c.beta = v; })},
                {"localization.est_noise_dbw", real([](const Config &c) { return linear_to_db(c.loc.est_noise); },
                                                    [](Config &c, double v) { c.loc.est_noise = dbw_to_watts(v); })},
                {"localization.nu_fraction", real([](const Config &c) { return c.loc.nu_fraction; },
                                                  [](Config &c, double v) { c.loc.nu_fraction = v; })},
                {"dictionary.n_max", integer([](const Config &c) { return c.n_max; },
                                             [](Config &c, int v) { c.n_max = v; })},
                {"coverage.threshold_db", real([](const Config &c) { return c.threshold_db; },
                                               [](Config &c, double v) { c.threshold_db = v; })},
                {"access.delta_bs", real([](const Config &c) { return c.access.delta_bs; },
                                         [](Config &c, double v) { c.access.delta_bs = v; })},
                {"access.delta_ma", real([](const Config &c) { return c.access.delta_ma; },
                                         [](Config &c, double v) { c.access.delta_ma = v; })},
                {"access.delta_d_m2", real([](const Config &c) { return c.access.delta_d; },
                                           [](Config &c, double v) { c.access.delta_d = v; })},
                {"access.delta_psi_rad2", real([](const Config &c) { return c.access.delta_psi; },
                                               [](Config &c, double v) { c.access.delta_psi = v; })},
                {"access.max_iter", integer([](const Config &c) { return c.access.max_iter; },
                                            [](Config &c, int v) { c.access.max_iter = v; })},
                {"access.symbol_s", real([](const Config &c) { return c.access.symbol_duration; },
                                         [](Config &c, double v) { c.access.symbol_duration = v; })},
                {"access.initial_sigma_d2_m2", real([](const Config &c) { return c.access.initial_sigma_d2; },
                                                    [](Config &c, double v) { c.access.initial_sigma_d2 = v; })},
                {"access.initial_theta_u_rad", real([](const Config &c) { return c.access.initial_theta_u; },
                                                    [](Config &c, double v) { c.access.initial_theta_u = v; })},
                {"access.ue_levels", integer([](const Config &c) { return c.access.ue_levels; },
                                             [](Config &c, int v) { c.access.ue_levels = v; })},
                {"optimizer.r0_bps", real([](const Config &c) { return c.opt.r0; },
                                          [](Config &c, double v) { c.opt.r0 = v; })},
                {"optimizer.eps_bs", real([](const Config &c) { return c.opt.eps_bs; },
                                          [](Config &c, double v) { c.opt.eps_bs = v; })},
                {"optimizer.eps_ma", real([](const Config &c) { return c.opt.eps_ma; },
                                          [](Config &c, double v) { c.opt.eps_ma = v; })},
                {"optimizer.beta_step", real([](const Config &c) { return c.opt.beta_step; },
                                             [](Config &c, double v) { c.opt.beta_step = v; })},
                {"optimizer.theta_u_rad", real([](const Config &c) { return c.opt.theta_u; },
                                               [](Config &c, double v) { c.opt.theta_u = v; })},
                {"optimizer.tie_tolerance", real([](const Config &c) { return c.opt.tie_tolerance; },
                                                 [](Config &c, double v) { c.opt.tie_tolerance = v; })},
                {"optimizer.k_candidates",
                 {[](Config &c, const std::string &k, const std::string &v)
                  {
                      // empty: all sizes 1..n_max
                      c.opt.k_candidates = v.find_first_not_of(" \t") == std::string::npos ? std::vector<int>{}
                                                                                            : parse_int_list(k, v);
                  },
                  [](const Config &c)
                  {
                      std::string s;
                      for (std::size_t i = 0; i < c.opt.k_candidates.size(); ++i)
                          s += (i ? "," : "") + std::to_string(c.opt.k_candidates[i]);
                      return s;
                  }}},
                {"montecarlo.seed",
                 {[](Config &c, const std::string &k, const std::string &v)
                  {
                      const long long s = to_integer(k, v);
                      if (s < 0)
                          throw ConfigError(k, "seed must be non-negative");
                      c.mc.seed = static_cast<std::uint64_t>(s);
                  },
                  [](const Config &c) { return std::to_string(c.mc.seed); }}},
                {"montecarlo.trials",
                 {[](Config &c, const std::string &k, const std::string &v)
                  {
                      const long long s = to_integer(k, v);
                      if (s < 1)
                          throw ConfigError(k, "trials must be at least 1");
                      c.mc.trials = static_cast<std::uint64_t>(s);
                  },
                  [](const Config &c) { return std::to_string(c.mc.trials); }}},
                {"montecarlo.threads",
                 {[](Config &c, const std::string &k, const std::string &v)
                  {
                      const int s = to_int(k, v);
                      if (s < 1)
                          throw ConfigError(k, "threads must be at least 1");
                      c.mc.threads = static_cast<unsigned>(s);
                  },
                  [](const Config &c) { return std::to_string(c.mc.threads); }}},
            };
            return table;
        }

        void require(bool ok, const char *key, const char *msg)
        {
            if (!ok)
                throw ConfigError(key, msg);
        }
    }

    void NetworkConfig::validate() const
    {
        require(lambda > 0.0, "network.lambda_per_km", "must be positive");
        require(p_t > 0.0, "network.tx_power_dbm", "must be finite");
        require(h_b > 0.0, "network.bs_height_m", "must be positive");
        require(f_c > 0.0, "network.carrier_hz", "must be positive");
        require(k_pl > 0.0, "network.path_loss_coeff", "must be positive");
        require(alpha_los > 0.0, "network.alpha_los", "must be positive");
        require(alpha_nlos >= alpha_los, "network.alpha_nlos", "must be >= alpha_los");
        require(n_los >= 1 && n_los <= 16, "network.nakagami_los", "must be an integer in [1, 16]");
        require(n_nlos >= 1 && n_nlos <= 16, "network.nakagami_nlos", "must be an integer in [1, 16]");
        require(d_s > 0.0, "network.los_radius_m", "must be positive");
        require(bandwidth > 0.0, "network.bandwidth_hz", "must be positive");
        require(noise_psd > 0.0, "network.noise_psd_dbm_hz", "must be finite");
        require(g0 > 0.0, "antenna.g0_dbi", "must be finite");
        require(eps_sidelobe > 0.0 && eps_sidelobe < 1.0, "antenna.sidelobe_eps", "must be in (0, 1)");
        require(t_frame > 0.0, "frame.t_frame_s", "must be positive");
        require(t_init > 0.0, "frame.t_init_s", "must be positive");
    }

    void LocalizationConfig::validate() const
    {
        require(est_noise > 0.0, "localization.est_noise_dbw", "must be finite");
        require(ue_elements >= 0, "antenna.ue_elements", "must be >= 0 (0 follows the UE beamwidth)");
        require(nu_fraction > 0.0, "localization.nu_fraction", "must be positive");
    }

    void AccessPolicy::validate() const
    {
        require(delta_bs > 0.0, "access.delta_bs", "must be positive");
        require(delta_ma > 0.0, "access.delta_ma", "must be positive");
        require(delta_d > 0.0, "access.delta_d_m2", "must be positive");
        require(delta_psi > 0.0, "access.delta_psi_rad2", "must be positive");
        require(max_iter >= 1, "access.max_iter", "must be at least 1");
        require(symbol_duration > 0.0, "access.symbol_s", "must be positive");
        require(initial_sigma_d2 > 0.0, "access.initial_sigma_d2_m2", "must be positive");
        require(initial_theta_u > 0.0 && initial_theta_u <= kPi / 2.0 + 1e-12,
                "access.initial_theta_u_rad", "must be in (0, pi/2]");
        require(ue_levels >= 1 && ue_levels <= 30, "access.ue_levels", "must be in [1, 30]");
    }

    void OptimizationSpec::validate() const
    {
        require(r0 > 0.0, "optimizer.r0_bps", "must be positive");
        require(eps_bs > 0.0 && eps_bs <= 1.0, "optimizer.eps_bs", "must be in (0, 1]");
        require(eps_ma > 0.0 && eps_ma <= 1.0, "optimizer.eps_ma", "must be in (0, 1]");
        require(beta_step > 0.0 && beta_step <= 1.0, "optimizer.beta_step", "must be in (0, 1]");
        require(tie_tolerance >= 0.0, "optimizer.tie_tolerance", "must be non-negative");
        require(theta_u >= 0.0 && theta_u <= kPi / 2.0 + 1e-12, "optimizer.theta_u_rad",
                "must be in [0, pi/2], 0 selects the per-k rule");
        for (int k : k_candidates)
            require(k >= 1, "optimizer.k_candidates", "entries must be >= 1");
    }

    void Config::finalize()
    {
        if (!k_pl_explicit_)
        {
            const double r = kSpeedOfLight / (4.0 * kPi * net.f_c);
            net.k_pl = r * r;
        }
    }

    void Config::validate() const
    {
        net.validate();
        loc.validate();
        access.validate();
        opt.validate();
        require(n_max >= 1 && n_max <= 4096, "dictionary.n_max", "must be in [1, 4096]");
        require(beta > 0.0 && beta <= 1.0, "frame.beta", "must be in (0, 1]");
        for (int k : opt.k_candidates)
            require(k <= n_max, "optimizer.k_candidates", "entries must be <= dictionary.n_max");
    }

    void Config::set(const std::string &key, const std::string &value)
    {
        if (key == "network.path_loss_coeff")
        {
            net.k_pl = to_double(key, value);
            k_pl_explicit_ = true;
            return;
        }
        if (key == "network.lambda_per_m")
        {
            net.lambda = to_double(key, value);
            return;
        }
        const auto &table = key_table();
        auto it = table.find(key);
        if (it == table.end())
            throw ConfigError(key, "unknown configuration key");
        it->second.set(*this, key, value);
        finalize();
    }

    std::vector<std::pair<std::string, std::string>> Config::entries() const
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto &[k, def] : key_table())
            out.emplace_back(k, def.get(*this));
        out.emplace_back("network.path_loss_coeff", format_double(net.k_pl));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::pair<std::string, std::string>> read_key_values(std::istream &in)
    {
        std::vector<std::pair<std::string, std::string>> out;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(lineno), "empty key");
            out.emplace_back(std::move(key), std::move(val));
        }
        return out;
    }

    Config make_config(const std::vector<std::pair<std::string, std::string>> &kv)
    {
        Config c;
        for (const auto &[k, v] : kv)
            c.set(k, v);
        c.finalize();
        c.validate();
        return c;
    }

    std::vector<int> parse_int_list(const std::string &key, const std::string &text)
    {
        std::vector<int> out;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto comma = text.find(',', pos);
            const std::string item = trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (item.empty())
                throw ConfigError(key, "empty list item");
            if (auto colon = item.find(':'); colon != std::string::npos)
            {
                const int a = to_int(key, item.substr(0, colon));
                const int b = to_int(key, item.substr(colon + 1));
                if (b < a || b - a > 100000)
                    throw ConfigError(key, "bad range '" + item + "'");
                for (int i = a; i <= b; ++i)
                    out.push_back(i);
            }
            else
                out.push_back(to_int(key, item));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        return out;
    }

    std::vector<double> parse_double_list(const std::string &key, const std::string &text)
    {
        std::vector<double> out;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto comma = text.find(',', pos);
            const std::string item = trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (item.empty())
                throw ConfigError(key, "empty list item");
            out.push_back(to_double(key, item));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        return out;
    }
}
