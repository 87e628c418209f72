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

#ifndef BEAMLOC_INITIAL_ACCESS_HPP
#define BEAMLOC_INITIAL_ACCESS_HPP

#include "beamloc/config.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/geometry.hpp"
#include "beamloc/units.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamloc
{
    struct BsChoice
    {
        int k = 1;
        int j = 1;
        bool fallback = false; // d_hat was outside the cell
    };

    // Thinnest row whose beam around d_hat keeps the in-cell beam-selection error <= delta_bs
    BsChoice select_bs_beam(const BeamDictionary &dict, double d_hat, double sigma_d2, double delta_bs);

    // UE candidates pi/2^i, i = levels..1, thinnest first
    std::vector<double> ue_candidates(int levels);

    // Thinnest candidate with 2 Q(nu_fraction theta / sigma_psi) <= delta_ma, else pi/2
    Radians select_ue_beam(double sigma_psi2, double delta_ma, int levels = 8, double nu_fraction = 0.5);

    // UE beam for the data phase at partition beta: the same rule, with the AoA bound of the
    // (1 - beta) T_F observation at the typical geometry (d_a = 1 / (2 lambda), user mid-cell)
    Radians data_phase_ue_beam(int k, double beta, const Config &cfg);

    // Typical cell: mean cell size, user in the middle, facing the BS
    struct TypicalCell
    {
        double d_a;
        double x;
    };
    TypicalCell typical_cell(const NetworkConfig &net);

    enum class Side
    {
        bs,
        ue
    };
    std::string to_string(Side s);

    enum class Termination
    {
        accuracy_met,
        max_iter
    };
    std::string to_string(Termination t);

    enum class AccessMode
    {
        bound_tracking, // selections use the true position
        stochastic      // selections use d_hat ~ N(d, sigma_d), psi_hat ~ N(psi, sigma_psi)
    };

    struct AccessStep
    {
        Side side = Side::bs;
        int k = 1;
        double theta_u = kPi / 2.0;
        double sigma_d2 = 0.0;   // after the step
        double sigma_psi2 = 0.0; // after the step
        long long symbols = 1;   // consumed by this step
        bool fallback = false;   // BS step fell back to k = 1
        double d_hat = 0.0;
        double psi_hat = 0.0;
    };

    struct AccessTrace
    {
        std::vector<AccessStep> steps;
        long long total_symbols = 0;
        Seconds total_delay{0.0};
        Termination terminated = Termination::max_iter;
        double d_a = 0.0;

        [[nodiscard]] int final_k() const { return steps.empty() ? 1 : steps.back().k; }
        [[nodiscard]] double final_theta_u() const { return steps.empty() ? kPi / 2.0 : steps.back().theta_u; }
    };

    // Refinement loop. Steps alternate BS and UE beam choice, starting at the BS; each step observes one
    // symbol through the current beam pair and adds its Fisher information to the running estimate.
    AccessTrace run_initial_access(const UserGeometry &geom, double d_a, const AccessPolicy &policy,
                                   const Config &cfg, AccessMode mode = AccessMode::bound_tracking,
                                   std::uint64_t seed = 1);

    // Loop at the typical cell
    AccessTrace run_initial_access(const AccessPolicy &policy, const Config &cfg);

    // Every BS/UE pair once
    Seconds delay_exhaustive(Radians theta_b, Radians theta_u, Seconds symbol);
    long long symbols_exhaustive(Radians theta_b, Radians theta_u);

    // Bisection: two symbols per level, BS from k = 2 up to target_k (at least one level), then UE from initial_theta_u
    Seconds delay_iterative(int target_k, Radians target_theta_u, Seconds symbol,
                            Radians initial_theta_u = Radians(kPi / 2.0));
    long long symbols_iterative(int target_k, Radians target_theta_u, Radians initial_theta_u = Radians(kPi / 2.0));

    // Columns iter, side, k, theta_u, sigma_d2, sigma_psi2, cum_symbols
    void write_trace_csv(std::ostream &out, const AccessTrace &trace);
}

#endif
