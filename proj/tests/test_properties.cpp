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

#include "catch_amalgamated.hpp"

#include "beamloc/antenna.hpp"
#include "beamloc/coverage.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/localization.hpp"
#include "beamloc/optimizer.hpp"

#include <cmath>
#include <random>

using namespace beamloc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("rows tile the cell with equal angular steps", "[property]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> da(0.5, 2000.0), hb(1.0, 50.0);
    std::uniform_int_distribution<int> kk(1, 64);
    for (int i = 0; i < 500; ++i)
    {
        const double d_a = da(rng), h = hb(rng);
        const int k = kk(rng);
        const auto b = beam_boundaries(d_a, h, k);
        REQUIRE(b.size() == static_cast<std::size_t>(k) + 1);
        CHECK(b.front() == 0.0);
        CHECK_THAT(b.back(), WithinRel(d_a, 1e-12));
        const double t1 = std::atan(d_a / h);
        for (int j = 1; j <= k; ++j)
        {
            CHECK(b[static_cast<std::size_t>(j)] > b[static_cast<std::size_t>(j) - 1]);
            CHECK_THAT(std::atan(b[static_cast<std::size_t>(j)] / h), WithinAbs(j * t1 / k, 1e-12));
        }
        std::uniform_real_distribution<double> pos(0.0, d_a);
        const double d = pos(rng);
        const int j = locate_beam(b, d);
        CHECK(b[static_cast<std::size_t>(j) - 1] <= d);
        CHECK(d <= b[static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("sector pattern conserves radiated power", "[property]")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> th(1e-3, kTwoPi), ep(0.0, 0.5), g(1.0, 1e3);
    for (int i = 0; i < 500; ++i)
    {
        const double theta = th(rng), g0 = g(rng), eps = ep(rng);
        const SectorizedPattern p(Radians(theta), g0, eps);
        CHECK_THAT(p.main_gain() * theta + p.side_gain() * (kTwoPi - theta), WithinRel(kTwoPi * g0, 1e-12));
        CHECK(p.main_gain() >= p.side_gain());
    }
}

TEST_CASE("array derivative matches finite differences", "[property]")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(-1.4, 1.4);
    for (int m : {2, 5, 16, 32})
    {
        const auto arr = UlaArray::half_wavelength(m, 28e9);
        for (int i = 0; i < 20; ++i)
        {
            const double a = ang(rng), h = 1e-6;
            const auto d = array_response_derivative(arr, Radians(a));
            const auto p = array_response(arr, Radians(a + h));
            const auto n = array_response(arr, Radians(a - h));
            for (std::size_t e = 0; e < d.size(); ++e)
                CHECK(std::abs(d[e] - (p[e] - n[e]) / (2.0 * h)) < 1e-6 * m);
        }
    }
}

TEST_CASE("coverage is ordered by branch gain", "[property]")
{
    const NetworkConfig net = Config().net;
    const double g = net.sidelobe_gain();
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> xs(0.0, 200.0), tdb(-10.0, 20.0), kk(1.0, 32.0);
    for (int i = 0; i < 200; ++i)
    {
        const double x = xs(rng), t = db_to_linear(tdb(rng));
        const double gb = main_lobe_gain(std::atan(400.0 / net.h_b) / kk(rng), net);
        const double gu = main_lobe_gain(kPi / 8.0, net);
        const double c0 = branch_coverage(x, t, gb * gu, net);
        const double c1 = branch_coverage(x, t, gb * g, net);
        const double c2 = branch_coverage(x, t, g * g, net);
        CHECK(c0 >= c1 - 1e-12);
        CHECK(c1 >= c2 - 1e-12);
        CHECK(c0 <= 1.0);
        CHECK(c2 >= 0.0);
    }
}

TEST_CASE("error probabilities stay in the unit interval", "[property]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i)
    {
        const double d_a = 1.0 + 300.0 * u(rng);
        const int k = 1 + static_cast<int>(31.0 * u(rng));
        const auto b = beam_boundaries(d_a, 10.0, k);
        const double d = d_a * u(rng), sigma = 1e-3 + 20.0 * u(rng);
        const int j = locate_beam(b, d);
        const double p = p_beam_selection_in_cell(d, sigma, b, j);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        // a wider spread never helps
        CHECK(p_beam_selection_in_cell(d, 2.0 * sigma, b, j) >= p - 1e-12);
        const double ma = p_misalignment(sigma * sigma * 1e-3, 0.1 + u(rng));
        CHECK(ma >= 0.0);
        CHECK(ma <= 1.0);
    }
}

TEST_CASE("looser caps never shrink the feasible set", "[property]")
{
    Config c;
    c.opt.beta_step = 0.2;
    c.finalize();
    const int k = 6;
    const Radians tu = optimizer_theta_u(k, c);
    std::vector<std::pair<double, double>> errs;
    for (double b : beta_grid(c.opt.beta_step))
        errs.emplace_back(avg_beam_selection_error(k, b, tu, c), avg_misalignment_error(k, tu, b, c));
    int prev = -1;
    for (double cap : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.3, 1.0})
    {
        int n = 0;
        for (const auto &[pb, pm] : errs)
            n += (pb <= cap && pm <= cap) ? 1 : 0;
        CHECK(n >= prev);
        prev = n;
    }
    CHECK(prev == static_cast<int>(errs.size()));
}

TEST_CASE("optimum is invariant to a common power scale", "[property]")
{
    Config a;
    a.opt.beta_step = 0.25;
    a.finalize();
    Config b = a;
    b.net.p_t *= 10.0;
    b.net.noise_psd *= 10.0;
    b.loc.est_noise *= 10.0;
    for (int k : {3, 12})
    {
        const auto ra = optimize_beta(k, a);
        const auto rb = optimize_beta(k, b);
        CHECK(ra.beta_star == rb.beta_star);
        CHECK(ra.feasible_count == rb.feasible_count);
        CHECK_THAT(rb.objective, WithinRel(ra.objective, 1e-9));
    }
}
