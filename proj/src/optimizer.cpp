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

#include "beamloc/optimizer.hpp"

#include "beamloc/coverage.hpp"
#include "beamloc/errors.hpp"
#include "beamloc/format.hpp"
#include "beamloc/initial_access.hpp"
#include "beamloc/localization.hpp"

#include <cmath>

namespace beamloc
{
    std::vector<double> beta_grid(double step)
    {
        if (!(step > 0.0 && step <= 1.0))
            throw DomainError("beta_grid: step must be in (0, 1]");
        std::vector<double> g;
        const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
        for (int i = 1; i <= n; ++i)
            g.push_back(i == n && std::abs(i * step - 1.0) < 1e-9 ? 1.0 : i * step);
        if (g.empty() || g.back() < 1.0)
            g.push_back(1.0);
        return g;
    }

    Radians optimizer_theta_u(int k, const Config &cfg)
    {
        if (cfg.opt.theta_u > 0.0)
            return Radians(cfg.opt.theta_u);
        return data_phase_ue_beam(k, cfg.beta, cfg);
    }

    BetaResult optimize_beta(int k, const Config &cfg)
    {
        if (k < 1 || k > cfg.n_max)
            throw DomainError("optimize_beta: k outside the dictionary");
        BetaResult r;
        r.k = k;
        const Radians theta_u = optimizer_theta_u(k, cfg);
        r.theta_u = theta_u.value();
        const auto betas = beta_grid(cfg.opt.beta_step);
        r.grid.resize(betas.size());

        parallel_for(betas.size(), cfg.mc.threads, [&](std::size_t i) {
            BetaPoint &p = r.grid[i];
            p.beta = betas[i];
            const auto est = EstimationModel::for_beta(cfg, k, theta_u, p.beta);
            p.p_bs = avg_beam_selection_error(est);
            p.p_ma = avg_misalignment_error(est);
            p.feasible = p.p_bs <= cfg.opt.eps_bs && p.p_ma <= cfg.opt.eps_ma;
            if (p.feasible)
                p.objective = rate_coverage(cfg.opt.r0, p.beta, k, theta_u, cfg);
        });

        double best = -1.0;
        for (const auto &p : r.grid)
            if (p.feasible)
            {
                ++r.feasible_count;
                best = std::max(best, p.objective);
            }
        if (r.feasible_count == 0)
            return r;
        for (const auto &p : r.grid)
            if (p.feasible && p.objective >= best - cfg.opt.tie_tolerance)
            {
                r.feasible = true;
                r.beta_star = p.beta;
                r.objective = p.objective;
                r.p_bs = p.p_bs;
                r.p_ma = p.p_ma;
            }
        return r;
    }

    OptimizationResult optimize_beamwidth(const Config &cfg)
    {
        std::vector<int> ks = cfg.opt.k_candidates;
        if (ks.empty())
            for (int k = 1; k <= cfg.n_max; ++k)
                ks.push_back(k);
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

        OptimizationResult out;
        double best = -1.0;
        for (int k : ks)
        {
            out.per_k.push_back(optimize_beta(k, cfg));
            const auto &b = out.per_k.back();
            out.feasible_set_size += b.feasible_count;
            if (b.feasible)
                best = std::max(best, b.objective);
        }
        for (const auto &b : out.per_k)
            if (b.feasible && b.objective >= best - cfg.opt.tie_tolerance)
            {
                out.feasible = true;
                out.k_star = b.k;
                out.theta_u = b.theta_u;
                out.beta_star = b.beta_star;
                out.objective = b.objective;
                out.theta_star = std::atan(1.0 / (2.0 * cfg.net.lambda * cfg.net.h_b)) / b.k;
                break;
            }
        return out;
    }

    void write_per_k_table(std::ostream &out, const OptimizationResult &r)
    {
        CsvWriter w(out, {"k", "theta_u", "feasible", "beta_star", "objective", "p_bs", "p_ma", "feasible_betas"});
        for (const auto &b : r.per_k)
            w.row() << b.k << b.theta_u << b.feasible << b.beta_star << b.objective << b.p_bs << b.p_ma
                    << b.feasible_count;
    }
}
