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

#include "beamloc/dictionary.hpp"
#include "beamloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamloc
{
    std::vector<double> beam_boundaries(double d_a, double h_b, int k)
    {
        if (!(d_a > 0.0 && h_b > 0.0) || k < 1)
            throw DomainError("beam_boundaries: need d_a > 0, h_b > 0, k >= 1");
        const double theta_k = std::atan(d_a / h_b) / k;
        std::vector<double> b(static_cast<std::size_t>(k) + 1);
        b[0] = 0.0;
        // absolute angles j * theta_k, no chained recursion
        for (int j = 1; j < k; ++j)
            b[static_cast<std::size_t>(j)] = h_b * std::tan(j * theta_k);
        b[static_cast<std::size_t>(k)] = d_a;
        return b;
    }

    BeamDictionary::BeamDictionary(Meters d_a, Meters h_b, int n_max)
        : d_a_(d_a), h_b_(h_b), theta_1_(0.0)
    {
        if (!(d_a.value() > 0.0 && h_b.value() > 0.0) || n_max < 1)
            throw DomainError("build_dictionary: arguments must be positive");
        theta_1_ = Radians(std::atan(d_a.value() / h_b.value()));
        rows_.reserve(static_cast<std::size_t>(n_max));
        for (int k = 1; k <= n_max; ++k)
        {
            const auto b = beam_boundaries(d_a.value(), h_b.value(), k);
            std::vector<BeamEntry> row;
            row.reserve(static_cast<std::size_t>(k));
            for (int j = 1; j <= k; ++j)
                row.push_back({theta(k), Meters(b[static_cast<std::size_t>(j) - 1]),
                               Meters(b[static_cast<std::size_t>(j)]), j, k});
            rows_.push_back(std::move(row));
        }
    }

    Radians BeamDictionary::theta(int k) const
    {
        if (k < 1)
            throw DomainError("BeamDictionary::theta: k must be >= 1");
        return theta_1_ / static_cast<double>(k);
    }

    const std::vector<BeamEntry> &BeamDictionary::row(int k) const
    {
        if (k < 1 || k > n_max())
            throw DomainError("BeamDictionary: row " + std::to_string(k) + " out of range");
        return rows_[static_cast<std::size_t>(k) - 1];
    }

    const BeamEntry &BeamDictionary::beam(int k, int j) const
    {
        const auto &r = row(k);
        if (j < 1 || j > k)
            throw DomainError("BeamDictionary: beam index out of range");
        return r[static_cast<std::size_t>(j) - 1];
    }

    const BeamEntry &BeamDictionary::lookup(int k, Meters d_hat) const
    {
        if (!(d_hat.value() >= 0.0 && d_hat.value() <= d_a_.value()))
            throw DomainError("lookup_beam: estimate outside the cell");
        const auto &r = row(k);
        // first beam whose right edge is >= d_hat
        auto it = std::lower_bound(r.begin(), r.end(), d_hat,
                                   [](const BeamEntry &e, Meters d) { return e.d_right < d; });
        if (it == r.end())
            --it;
        return *it;
    }

    BeamDictionary build_dictionary(Meters d_a, Meters h_b, int n_max)
    {
        return {d_a, h_b, n_max};
    }

    int locate_beam(const std::vector<double> &bounds, double d)
    {
        const int k = static_cast<int>(bounds.size()) - 1;
        auto it = std::lower_bound(bounds.begin() + 1, bounds.end(), d);
        if (it == bounds.end())
            return k;
        return static_cast<int>(it - bounds.begin());
    }
}
