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

#include "beamloc/experiments.hpp"

#include "beamloc/coverage.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/errors.hpp"
#include "beamloc/format.hpp"
#include "beamloc/initial_access.hpp"
#include "beamloc/localization.hpp"
#include "beamloc/montecarlo.hpp"
#include "beamloc/optimizer.hpp"

#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>

#ifndef BEAMLOC_VERSION
#define BEAMLOC_VERSION "0.0.0"
#endif

namespace beamloc
{
    namespace fs = std::filesystem;

    namespace
    {
        const std::vector<std::string> kAxes{"lambda_per_m", "k", "beta", "est_noise_dbw", "delta_d_m2", "g0_dbi"};

        std::vector<double> log_grid(double lo, double hi, int n)
        {
            std::vector<double> g;
            for (int i = 0; i < n; ++i)
                g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
            return g;
        }

        std::ofstream open_csv(const fs::path &p)
        {
            std::ofstream f(p);
            if (!f)
                throw ConfigError("out", "cannot write " + p.string());
            return f;
        }

        Config with_lambda(Config c, double lambda)
        {
            c.net.lambda = lambda;
            c.finalize();
            return c;
        }

        void access_delay(const ExperimentSpec &s, std::ostream &out)
        {
            const auto lambdas = s.sweep.get("lambda_per_m", log_grid(0.005, 0.2, 12));
            const auto deltas = s.sweep.get("delta_d_m2", {0.1, 0.01});
            CsvWriter w(out, {"lambda", "delta_d", "steps", "k_final", "theta_u_final", "terminated", "proposed_ms",
                              "iterative_ms", "exhaustive_ms", "reduction_vs_exhaustive"});
            for (double dd : deltas)
                for (double lam : lambdas)
                {
                    Config c = with_lambda(s.cfg, lam);
                    c.access.delta_d = dd;
                    const auto t = run_initial_access(c.access, c);
                    const Seconds sym(c.access.symbol_duration);
                    const double theta_b = std::atan(t.d_a / c.net.h_b) / t.final_k();
                    const double it = delay_iterative(t.final_k(), Radians(t.final_theta_u()), sym).value();
                    const double ex = delay_exhaustive(Radians(theta_b), Radians(t.final_theta_u()), sym).value();
                    const double pr = t.total_delay.value();
                    w.row() << lam << dd << t.total_symbols << t.final_k() << t.final_theta_u()
                            << to_string(t.terminated) << pr * 1e3 << it * 1e3 << ex * 1e3 << 1.0 - pr / ex;
                }
        }

        void access_resolution(const ExperimentSpec &s, std::ostream &out)
        {
            const auto lambdas = s.sweep.get("lambda_per_m", {0.005, 0.01, 0.02});
            CsvWriter w(out, {"lambda", "iter", "side", "k", "theta_u", "sigma_d2", "sigma_psi2", "cum_symbols"});
            for (double lam : lambdas)
            {
                const Config c = with_lambda(s.cfg, lam);
                const auto t = run_initial_access(c.access, c);
                long long cum = 0;
                int it = 0;
                for (const auto &st : t.steps)
                {
                    cum += st.symbols;
                    w.row() << lam << ++it << to_string(st.side) << st.k << st.theta_u << st.sigma_d2
                            << st.sigma_psi2 << cum;
                }
            }
        }

        void error_vs_dictionary(const ExperimentSpec &s, std::ostream &out)
        {
            const auto gains = s.sweep.get("g0_dbi", {linear_to_db(s.cfg.net.g0)});
            std::vector<int> all;
            for (int k = 1; k <= s.cfg.n_max; ++k)
                all.push_back(k);
            const auto ks = s.sweep.get_int("k", all);
            struct Row
            {
                double g0, theta_u, p_bs, p_ma;
                int k;
            };
            std::vector<Row> rows(gains.size() * ks.size());
            parallel_for(rows.size(), s.cfg.mc.threads, [&](std::size_t i) {
                Config c = s.cfg;
                c.net.g0 = db_to_linear(gains[i / ks.size()]);
                c.finalize();
                const int k = ks[i % ks.size()];
                const Radians tu = optimizer_theta_u(k, c);
                const auto est = EstimationModel::for_beta(c, k, tu, c.beta);
                rows[i] = {gains[i / ks.size()], tu.value(), avg_beam_selection_error(est),
                           avg_misalignment_error(est), k};
            });
            CsvWriter w(out, {"g0_dbi", "k", "theta_u", "beta", "p_bs", "p_ma"});
            for (const auto &r : rows)
                w.row() << r.g0 << r.k << r.theta_u << s.cfg.beta << r.p_bs << r.p_ma;
        }

        // rate coverage and average errors over the beta grid, shared by two experiments
        void rate_table(const ExperimentSpec &s, std::ostream &out, bool by_pbs)
        {
            const auto ks = s.sweep.get_int("k", {4, 16});
            const auto betas = s.sweep.get("beta", beta_grid(s.cfg.opt.beta_step));
            struct Row
            {
                int k;
                double theta_u, beta, p_bs, p_ma, rate;
            };
            std::vector<Row> rows(ks.size() * betas.size());
            parallel_for(rows.size(), s.cfg.mc.threads, [&](std::size_t i) {
                const int k = ks[i / betas.size()];
                const double b = betas[i % betas.size()];
                const Radians tu = optimizer_theta_u(k, s.cfg);
                const auto est = EstimationModel::for_beta(s.cfg, k, tu, b);
                rows[i] = {k, tu.value(), b, avg_beam_selection_error(est), avg_misalignment_error(est),
                           rate_coverage(s.cfg.opt.r0, b, k, tu, s.cfg)};
            });
            if (by_pbs)
            {
                CsvWriter w(out, {"k", "beta", "p_bs", "rate_coverage"});
                for (const auto &r : rows)
                    w.row() << r.k << r.beta << r.p_bs << r.rate;
                return;
            }
            CsvWriter w(out, {"k", "theta_u", "beta", "rate_coverage", "p_bs", "p_ma", "r0_bps"});
            for (const auto &r : rows)
                w.row() << r.k << r.theta_u << r.beta << r.rate << r.p_bs << r.p_ma << s.cfg.opt.r0;
        }

        void optimal_map(const ExperimentSpec &s, std::ostream &out)
        {
            const auto lambdas = s.sweep.get("lambda_per_m", {0.01, 0.02, 0.05, 0.1, 0.2});
            const auto noises = s.sweep.get("est_noise_dbw", {-50.0, -20.0});
            CsvWriter w(out, {"lambda", "est_noise_dbw", "feasible", "k_star", "beta_star", "theta_star", "theta_u",
                              "objective"});
            for (double nz : noises)
                for (double lam : lambdas)
                {
                    Config c = with_lambda(s.cfg, lam);
                    c.loc.est_noise = dbw_to_watts(nz);
                    const auto r = optimize_beamwidth(c);
                    w.row() << lam << nz << r.feasible << r.k_star << r.beta_star << r.theta_star << r.theta_u
                            << r.objective;
                }
        }

        void validate_analytical(const ExperimentSpec &s, std::ostream &out)
        {
            // both methods again in the coverage schema
            auto raw = open_csv(s.out_dir / "validate_analytical_coverage.csv");
            CsvWriter cov(raw, coverage_csv_header());
            const auto lambdas = s.sweep.get("lambda_per_m", {0.005, 0.02, 0.1});
            const auto ks = s.sweep.get_int("k", {4, 16});
            const auto betas = s.sweep.get("beta", {0.5, 0.9});
            CsvWriter w(out, {"lambda", "k", "beta", "theta_u", "threshold_db", "analytical", "montecarlo", "stderr",
                              "tolerance", "pass"});
            for (double lam : lambdas)
                for (int k : ks)
                    for (double b : betas)
                    {
                        const Config c = with_lambda(s.cfg, lam);
                        CoverageQuery q;
                        q.threshold = db_to_linear(c.threshold_db);
                        q.k = k;
                        q.beta = b;
                        q.theta_u = optimizer_theta_u(k, c);
                        const double a = coverage_probability(q, c).probability;
                        const auto m = simulate_coverage(q, c, mc_settings(c));
                        const double tol = std::max(0.02, 3.0 * m.std_error);
                        CoverageResult ar;
                        ar.probability = a;
                        write_coverage_row(cov, lam, q, ar);
                        write_coverage_row(cov, lam, q, m);
                        w.row() << lam << k << b << q.theta_u.value() << c.threshold_db << a << m.probability
                                << m.std_error << tol << (std::abs(a - m.probability) <= tol);
                    }
        }

        using Runner = std::function<void(const ExperimentSpec &, std::ostream &)>;

        const std::map<std::string, Runner> &runners()
        {
            static const std::map<std::string, Runner> r{
                {"access-delay", access_delay},
                {"access-resolution", access_resolution},
                {"error-vs-dictionary", error_vs_dictionary},
                {"rate-vs-beta", [](const ExperimentSpec &s, std::ostream &o) { rate_table(s, o, false); }},
                {"rate-vs-pbs", [](const ExperimentSpec &s, std::ostream &o) { rate_table(s, o, true); }},
                {"optimal-beta-map", optimal_map},
                {"optimal-k-map", optimal_map},
                {"validate-analytical", validate_analytical}};
            return r;
        }
    }

    bool SweepAxes::is_sweep_key(const std::string &key)
    {
        return key.rfind("sweep.", 0) == 0;
    }

    void SweepAxes::set(const std::string &key, const std::string &value)
    {
        const std::string axis = is_sweep_key(key) ? key.substr(6) : key;
        if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end())
            throw ConfigError("sweep." + axis, "unknown sweep axis");
        if (axis == "k")
            parse_int_list("sweep.k", value);
        else if (parse_double_list("sweep." + axis, value).empty())
            throw ConfigError("sweep." + axis, "empty sweep");
        raw_["sweep." + axis] = value;
    }

    std::vector<double> SweepAxes::get(const std::string &axis, std::vector<double> fallback) const
    {
        const auto it = raw_.find("sweep." + axis);
        return it == raw_.end() ? fallback : parse_double_list(it->first, it->second);
    }

    std::vector<int> SweepAxes::get_int(const std::string &axis, std::vector<int> fallback) const
    {
        const auto it = raw_.find("sweep." + axis);
        return it == raw_.end() ? fallback : parse_int_list(it->first, it->second);
    }

    const std::vector<std::string> &experiment_names()
    {
        static const std::vector<std::string> names{"access-delay",     "access-resolution", "error-vs-dictionary",
                                                    "rate-vs-beta",     "rate-vs-pbs",       "optimal-beta-map",
                                                    "optimal-k-map",    "validate-analytical"};
        return names;
    }

    std::pair<Config, SweepAxes> split_settings(const std::vector<std::pair<std::string, std::string>> &kv)
    {
        std::vector<std::pair<std::string, std::string>> rest;
        SweepAxes sweep;
        for (const auto &[k, v] : kv)
        {
            if (SweepAxes::is_sweep_key(k))
                sweep.set(k, v);
            else
                rest.emplace_back(k, v);
        }
        return {make_config(rest), sweep};
    }

    std::string version()
    {
        return BEAMLOC_VERSION;
    }

    void write_manifest(const fs::path &path, const std::string &what, const Config &cfg, const SweepAxes &sweep,
                        double wall_seconds)
    {
        std::ofstream f(path);
        if (!f)
            throw ConfigError("out", "cannot write " + path.string());
        f << "# beamloc " << version() << ", boost " << BOOST_VERSION / 100000 << '.' << BOOST_VERSION / 100 % 1000
          << ", " << __VERSION__ << '\n';
        f << "# run: " << what << '\n';
        f << "# wall_time_s: " << format_double(wall_seconds) << '\n';
        f << "# units: powers dBm, noise PSD dBm/Hz, gains dBi, estimator noise dBW, densities per m or km, "
             "times s; linear SI internally\n";
        for (const auto &[k, v] : cfg.entries())
            f << k << " = " << v << '\n';
        for (const auto &[k, v] : sweep.raw())
            f << k << " = " << v << '\n';
    }

    std::vector<fs::path> run_experiment(const ExperimentSpec &spec)
    {
        const auto &r = runners();
        const auto it = r.find(spec.name);
        if (it == r.end())
            throw ConfigError("experiment", "unknown experiment '" + spec.name + "'");
        fs::create_directories(spec.out_dir);
        const auto start = std::chrono::steady_clock::now();
        std::string file = spec.name;
        std::replace(file.begin(), file.end(), '-', '_');
        const fs::path csv = spec.out_dir / (file + ".csv");
        {
            auto f = open_csv(csv);
            it->second(spec, f);
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const fs::path manifest = spec.out_dir / "manifest.txt";
        write_manifest(manifest, "run " + spec.name, spec.cfg, spec.sweep, wall);
        std::vector<fs::path> files{csv, manifest};
        if (spec.name == "validate-analytical")
            files.push_back(spec.out_dir / "validate_analytical_coverage.csv");
        return files;
    }

    void write_dictionary_csv(std::ostream &out, double d_a, const Config &cfg)
    {
        const auto dict = build_dictionary(Meters(d_a), Meters(cfg.net.h_b), cfg.n_max);
        CsvWriter w(out, {"k", "j", "theta_k", "d_left", "d_right"});
        for (int k = 1; k <= dict.n_max(); ++k)
            for (const auto &b : dict.row(k))
                w.row() << b.k << b.j << b.theta_k.value() << b.d_left.value() << b.d_right.value();
    }
}
