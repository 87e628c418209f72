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

#ifndef BEAMLOC_OPTIMIZER_HPP
#define BEAMLOC_OPTIMIZER_HPP

#include "beamloc/config.hpp"
#include "beamloc/units.hpp"

#include <iosfwd>
#include <vector>

namespace beamloc
{
    // One grid point of the inner problem
    struct BetaPoint
    {
        double beta = 0.0;
        double p_bs = 0.0;
        double p_ma = 0.0;
        bool feasible = false;
        double objective = 0.0; // rate coverage, evaluated only when feasible
    };

    struct BetaResult
    {
        int k = 1;
        double theta_u = 0.0;
        bool feasible = false;
        double beta_star = 0.0;
        double objective = 0.0;
        double p_bs = 0.0; // at beta_star
        double p_ma = 0.0;
        int feasible_count = 0;
        std::vector<BetaPoint> grid;
    };

    struct OptimizationResult
    {
        bool feasible = false;
        int k_star = 0;
        double theta_star = 0.0; // BS beamwidth of row k_star at the mean cell size
        double theta_u = 0.0;
        double beta_star = 0.0;
        double objective = 0.0;
        int feasible_set_size = 0; // feasible (k, beta) pairs
        std::vector<BetaResult> per_k;
    };

    // (0, 1] in steps of `step`; 1 is always included
    std::vector<double> beta_grid(double step);

    // UE beamwidth used for row k: cfg.opt.theta_u if set, else the data-phase rule at cfg.beta
    Radians optimizer_theta_u(int k, const Config &cfg);

    // Inner problem: largest rate coverage over the beta grid subject to both average error caps.
    // Values within the tie tolerance of the best count as ties and resolve to the larger beta.
    BetaResult optimize_beta(int k, const Config &cfg);

    // Outer problem over cfg.opt.k_candidates (1..n_max when empty); ties resolve to the smaller k
    OptimizationResult optimize_beamwidth(const Config &cfg);

    // Columns k, theta_u, feasible, beta_star, objective, p_bs, p_ma, feasible_betas
    void write_per_k_table(std::ostream &out, const OptimizationResult &r);

    // Run fn(i) for i in [0, n) on `threads` workers (0: hardware concurrency); fn writes to its own slot
    template <class F>
    void parallel_for(std::size_t n, unsigned threads, F &&fn);
}

#include "beamloc/detail/parallel.hpp"

#endif
