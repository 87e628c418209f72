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

#ifndef BEAMLOC_DICTIONARY_HPP
#define BEAMLOC_DICTIONARY_HPP

#include "beamloc/units.hpp"

#include <vector>

namespace beamloc
{
    struct BeamEntry
    {
        Radians theta_k; // beamwidth
        Meters d_left;   // ground interval covered by the beam
        Meters d_right;
        int j = 1; // beam index, 1..k
        int k = 1; // dictionary size

        [[nodiscard]] Meters coverage() const { return d_right - d_left; }
        [[nodiscard]] bool contains(Meters d) const { return d >= d_left && d <= d_right; }
    };

    // Ground boundaries of row k for a cell [0, d_a]: b_j = h tan(j theta_1 / k), b_k = d_a.
    // Returned vector has k + 1 entries, b_0 = 0.
    std::vector<double> beam_boundaries(double d_a, double h_b, int k);

    // Lower triangular database: row k holds k beams tiling [0, d_a]
    class BeamDictionary
    {
    public:
        BeamDictionary(Meters d_a, Meters h_b, int n_max);

        [[nodiscard]] Meters d_a() const { return d_a_; }
        [[nodiscard]] Meters h_b() const { return h_b_; }
        [[nodiscard]] int n_max() const { return static_cast<int>(rows_.size()); }
        [[nodiscard]] Radians theta_1() const { return theta_1_; }
        [[nodiscard]] Radians theta(int k) const;

        // Row k (1-based), k beams
        [[nodiscard]] const std::vector<BeamEntry> &row(int k) const;
        [[nodiscard]] const BeamEntry &beam(int k, int j) const;

        // Beam of row k containing d_hat; ties on a shared boundary resolve to the left beam
        [[nodiscard]] const BeamEntry &lookup(int k, Meters d_hat) const;

    private:
        Meters d_a_;
        Meters h_b_;
        Radians theta_1_;
        std::vector<std::vector<BeamEntry>> rows_;
    };

    BeamDictionary build_dictionary(Meters d_a, Meters h_b, int n_max);

    // Index j (1-based) of the beam containing d in a boundary vector, left-biased on ties.
    // d must be inside [b_0, b_k].
    int locate_beam(const std::vector<double> &bounds, double d);
}

#endif
