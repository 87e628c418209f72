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

#include "beamloc/initial_access.hpp"

#include "beamloc/errors.hpp"
#include "beamloc/format.hpp"
#include "beamloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace beamloc
{
    namespace
    {
        // ceil with slack for values like 2 pi / (pi / 8) landing a hair above an integer
        long long ceil_count(double v)
        {
            return static_cast<long long>(std::ceil(v - 1e-9));
        }

        double inverse_or_zero(double v)
        {
            return std::isfinite(v) && v > 0.0 ? 1.0 / v : 0.0;
        }

        double inverse_or_inf(double v)
        {
            return v > 0.0 ? 1.0 / v : INFINITY;
        }
    }

    BsChoice select_bs_beam(const BeamDictionary &dict, double d_hat, double sigma_d2, double delta_bs)
    {
        if (!(sigma_d2 >= 0.0))
            throw DomainError("select_bs_beam: negative variance");
        if (!(d_hat >= 0.0 && d_hat <= dict.d_a().value()))
            return {1, 1, true};
        const double sigma = std::sqrt(sigma_d2);
        BsChoice best;
        for (int k = 1; k <= dict.n_max(); ++k)
        {
            const auto &row = dict.row(k);
            std::vector<double> bounds{0.0};
            for (const auto &b : row)
                bounds.push_back(b.d_right.value());
            const int j = dict.lookup(k, Meters(d_hat)).j;
            if (p_beam_selection_in_cell(d_hat, sigma, bounds, j) <= delta_bs)
                best = {k, j, false};
        }
        return best;
    }

    std::vector<double> ue_candidates(int levels)
    {
        std::vector<double> c;
        for (int i = levels; i >= 1; --i)
            c.push_back(kPi / std::ldexp(1.0, i));
        return c;
    }

    Radians select_ue_beam(double sigma_psi2, double delta_ma, int levels, double nu_fraction)
    {
        if (!(sigma_psi2 >= 0.0))
            throw DomainError("select_ue_beam: negative variance");
        for (double t : ue_candidates(levels))
            if (p_misalignment(sigma_psi2, nu_fraction * t) <= delta_ma)
                return Radians(t);
        return Radians(kPi / 2.0);
    }

    TypicalCell typical_cell(const NetworkConfig &net)
    {
        const double d_a = 1.0 / (2.0 * net.lambda);
        return {d_a, 0.5 * d_a};
    }

    Radians data_phase_ue_beam(int k, double beta, const Config &cfg)
    {
        if (k < 1)
            throw DomainError("data_phase_ue_beam: k must be >= 1");
        const auto cell = typical_cell(cfg.net);
        const UserGeometry geom(Meters(cell.x), Radians(0.0), Meters(cfg.net.h_b));
        const Radians theta_b(std::atan(cell.d_a / cfg.net.h_b) / k);
        // aperture may follow the candidate width, so the bound is evaluated per candidate
        for (double t : ue_candidates(cfg.access.ue_levels))
        {
            const auto s2 = crlb_aoa(geom, theta_b, Radians(t), beta, cfg);
            if (s2 && p_misalignment(*s2, cfg.loc.nu_fraction * t) <= cfg.access.delta_ma)
                return Radians(t);
        }
        return Radians(kPi / 2.0);
    }

    std::string to_string(Side s)
    {
        return s == Side::bs ? "BS" : "UE";
    }

    std::string to_string(Termination t)
    {
        return t == Termination::accuracy_met ? "accuracy_met" : "max_iter";
    }

    AccessTrace run_initial_access(const UserGeometry &geom, double d_a, const AccessPolicy &policy,
                                   const Config &cfg, AccessMode mode, std::uint64_t seed)
    {
        policy.validate();
        const double d = geom.d().value();
        if (!(d_a > 0.0) || d < 0.0 || d > d_a)
            throw DomainError("run_initial_access: user outside [0, d_a]");

        const BeamDictionary dict(Meters(d_a), Meters(cfg.net.h_b), cfg.n_max);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;

        // running Fisher information
        double j_d = inverse_or_zero(policy.initial_sigma_d2);
        double j_psi = inverse_or_zero(std::pow(cfg.loc.nu_fraction * policy.initial_theta_u, 2));
        int k = 1;
        double theta_u = policy.initial_theta_u;
        const double psi = geom.psi().value();

        AccessTrace trace;
        trace.d_a = d_a;
        for (int it = 1; it <= policy.max_iter; ++it)
        {
            AccessStep step;
            const double s_d = std::sqrt(inverse_or_inf(j_d));
            const double s_psi = std::sqrt(inverse_or_inf(j_psi));
            step.d_hat = d;
            step.psi_hat = psi;
            if (mode == AccessMode::stochastic)
            {
                if (std::isfinite(s_d))
                    step.d_hat = d + s_d * normal(rng);
                if (std::isfinite(s_psi))
                    step.psi_hat = psi + s_psi * normal(rng);
            }
            if (it % 2 == 1)
            {
                step.side = Side::bs;
                const auto c = select_bs_beam(dict, step.d_hat, s_d * s_d, policy.delta_bs);
                k = c.k;
                step.fallback = c.fallback;
            }
            else
            {
                step.side = Side::ue;
                theta_u = select_ue_beam(s_psi * s_psi, policy.delta_ma, policy.ue_levels, cfg.loc.nu_fraction)
                              .value();
            }
            const auto b = crlb(geom, dict.theta(k), Radians(theta_u), Seconds(policy.symbol_duration), cfg);
            j_d += inverse_or_zero(b.sigma_d2);
            j_psi += inverse_or_zero(b.sigma_psi2);

            step.k = k;
            step.theta_u = theta_u;
            step.sigma_d2 = inverse_or_inf(j_d);
            step.sigma_psi2 = inverse_or_inf(j_psi);
            step.symbols = 1;
            trace.steps.push_back(step);
            trace.total_symbols += step.symbols;
            if (step.sigma_d2 <= policy.delta_d && step.sigma_psi2 <= policy.delta_psi)
            {
                trace.terminated = Termination::accuracy_met;
                break;
            }
        }
        trace.total_delay = Seconds(static_cast<double>(trace.total_symbols) * policy.symbol_duration);
        return trace;
    }

    AccessTrace run_initial_access(const AccessPolicy &policy, const Config &cfg)
    {
        const auto cell = typical_cell(cfg.net);
        const UserGeometry geom(Meters(cell.x), Radians(0.0), Meters(cfg.net.h_b));
        return run_initial_access(geom, cell.d_a, policy, cfg);
    }

    long long symbols_exhaustive(Radians theta_b, Radians theta_u)
    {
        if (!(theta_b.value() > 0.0) || !(theta_u.value() > 0.0))
            throw DomainError("delay_exhaustive: beamwidths must be positive");
        return ceil_count(kTwoPi / theta_b.value()) * ceil_count(kTwoPi / theta_u.value());
    }

    Seconds delay_exhaustive(Radians theta_b, Radians theta_u, Seconds symbol)
    {
        return Seconds(static_cast<double>(symbols_exhaustive(theta_b, theta_u)) * symbol.value());
    }

    long long symbols_iterative(int target_k, Radians target_theta_u, Radians initial_theta_u)
    {
        if (target_k < 1)
            throw DomainError("delay_iterative: k must be >= 1");
        if (!(target_theta_u.value() > 0.0) || target_theta_u.value() > initial_theta_u.value() * (1.0 + 1e-12))
            throw DomainError("delay_iterative: UE target must lie in (0, initial width]");
        // the search opens at k = 2, so one BS stage is always spent
        const long long bs = std::max(1LL, ceil_count(std::log2(static_cast<double>(target_k))));
        const long long ue = std::max(0LL, ceil_count(std::log2(initial_theta_u.value() / target_theta_u.value())));
        return 2 * (bs + ue);
    }

    Seconds delay_iterative(int target_k, Radians target_theta_u, Seconds symbol, Radians initial_theta_u)
    {
        return Seconds(static_cast<double>(symbols_iterative(target_k, target_theta_u, initial_theta_u)) *
                       symbol.value());
    }

    void write_trace_csv(std::ostream &out, const AccessTrace &trace)
    {
        CsvWriter w(out, {"iter", "side", "k", "theta_u", "sigma_d2", "sigma_psi2", "cum_symbols"});
        long long cum = 0;
        int it = 0;
        for (const auto &s : trace.steps)
        {
            cum += s.symbols;
            w.row() << ++it << to_string(s.side) << s.k << s.theta_u << s.sigma_d2 << s.sigma_psi2 << cum;
        }
    }
}
