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

#ifndef BEAMLOC_MONTECARLO_HPP
#define BEAMLOC_MONTECARLO_HPP

#include "beamloc/config.hpp"
#include "beamloc/coverage.hpp"
#include "beamloc/geometry.hpp"
#include "beamloc/localization.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace beamloc
{
    // One deployment seen from a user at the origin
    struct Realization
    {
        std::uint64_t seed = 0;
        double window = 0.0;             // BSs live on [-window, window]
        std::vector<double> bs_positions; // sorted ground coordinates, m
        std::size_t serving_index = 0;    // nearest by ground distance
        UserGeometry user{Meters(0.0), Radians(0.0), Meters(10.0)};
        std::vector<double> fading; // |f|^2 per BS, Gamma(N, 1/N) with N from the link state
    };

    // Truncation rule: max(10 / lambda, d_s + 500 m)
    double default_window(const NetworkConfig &net);

    // Unconditional PPP draw; throws DomainError when the window holds no BS
    Realization sample_deployment(const NetworkConfig &net, std::uint64_t seed, double window = 0.0);

    struct McSettings
    {
        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        unsigned threads = 1; // 0: hardware concurrency
        double window = 0.0;  // interferer reach beyond the serving distance, 0: default_window
    };
    McSettings mc_settings(const Config &cfg);

    // Empirical P(SINR >= T). Per trial: cell size, user position (uniform in beam j, or in the cell for j = 0),
    // Gaussian estimates with the bound variances, beam lookup on the clamped distance estimate,
    // Nakagami fading on every link and sidelobe interference from a conditional PPP beyond the serving distance.
    CoverageResult simulate_coverage(const CoverageQuery &query, const Config &cfg, const McSettings &mc,
                                     const ErrorOverrides &ov = {});

    struct ErrorEstimate
    {
        double p_bs = 0.0;
        double p_ma = 0.0;
        double se_bs = 0.0;
        double se_ma = 0.0;
    };

    // Empirical beam-selection and misalignment frequencies over (d_a, d) and Gaussian estimate draws
    ErrorEstimate simulate_error_probabilities(const EstimationModel &model, const McSettings &mc);
    ErrorEstimate simulate_error_probabilities(int k, double beta, Radians theta_u, const Config &cfg,
                                               const McSettings &mc);

    struct MeanEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
    };

    // E[exp(-s I)] for interferers beyond the serving distance, sidelobe product `gain`
    MeanEstimate simulate_laplace(double serving_d, double s, double gain, const NetworkConfig &net,
                                  const McSettings &mc);

    // Run fn(block_index, rng, first_trial, count) over fixed blocks; each block owns an RNG seeded from
    // (seed, block), so results do not depend on the thread count
    inline constexpr std::uint64_t kMcBlock = 4096;
    void for_each_block(const McSettings &mc,
                        const std::function<void(std::uint64_t, std::mt19937_64 &, std::uint64_t)> &fn);
}

#endif
