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

#ifndef BEAMLOC_QUADRATURE_HPP
#define BEAMLOC_QUADRATURE_HPP

#include "beamloc/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

namespace beamloc::quad
{
    // Adaptive 15-point Gauss-Kronrod on [a, b]; relative tolerance against the L1 norm
    template <class F>
    double adaptive(F &&f, double a, double b, double rel_tol, const char *where, unsigned max_depth = 12)
    {
        if (!(b > a))
            return 0.0;
        double err = 0.0;
        double l1 = 0.0;
        const double r = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, a, b, max_depth, rel_tol, &err, &l1);
        if (!std::isfinite(r))
            throw NumericError(where, "non-finite integral on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
        return r;
    }

    // Visit the nodes of the fixed N-point Gauss-Legendre rule on [a, b]: visit(x, w).
    // For integrands with several components evaluated together.
    template <unsigned N, class V>
    void nodes(double a, double b, V &&visit)
    {
        if (!(b > a))
            return;
        using rule = boost::math::quadrature::gauss<double, N>;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        const auto &x = rule::abscissa();
        const auto &w = rule::weights();
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (x[i] == 0.0)
            {
                visit(mid, half * w[i]);
                continue;
            }
            visit(mid - half * x[i], half * w[i]);
            visit(mid + half * x[i], half * w[i]);
        }
    }

    // Fixed 20-point Gauss-Legendre on [a, b]
    template <class F>
    double fixed20(F &&f, double a, double b)
    {
        if (!(b > a))
            return 0.0;
        return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
    }
}

#endif
