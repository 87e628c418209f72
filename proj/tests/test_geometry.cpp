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

#include "beamloc/errors.hpp"
#include "beamloc/geometry.hpp"
#include "beamloc/montecarlo.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace beamloc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cell size density", "[geometry]")
{
    NetworkConfig net;
    net.lambda = 0.01;
    CHECK_THAT(cell_size_pdf(Meters(0.0), net), WithinRel(0.02, 1e-15));
    CHECK_THAT(cell_size_pdf(Meters(50.0), net), WithinRel(0.02 * std::exp(-1.0), 1e-14));
    CHECK_THAT(cell_size_pdf(Meters(50.0), net), WithinAbs(0.007358, 5e-7));
    CHECK_THROWS_AS(cell_size_pdf(Meters(-1.0), net), DomainError);

    const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return cell_size_pdf(Meters(x), net); }, 0.0, std::numeric_limits<double>::infinity(), 15,
        1e-12);
    CHECK_THAT(total, WithinAbs(1.0, 1e-9));
}

TEST_CASE("cell size quantile inverts the cdf", "[geometry]")
{
    NetworkConfig net;
    for (double u : {0.0, 0.1, 0.5, 0.9, 0.999})
        CHECK_THAT(cell_size_cdf(cell_size_quantile(u, net), net), WithinAbs(u, 1e-14));
    CHECK_THROWS_AS(cell_size_quantile(1.0, net), DomainError);
}

TEST_CASE("user position density", "[geometry]")
{
    CHECK(user_position_pdf(Meters(30.0), Meters(100.0)) == 0.01);
    CHECK(user_position_pdf(Meters(150.0), Meters(100.0)) == 0.0);
    CHECK_THROWS_AS(user_position_pdf(Meters(1.0), Meters(0.0)), DomainError);
    const double total = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [](double y) { return user_position_pdf(Meters(y), Meters(100.0)); }, 0.0, 100.0);
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));
}

TEST_CASE("LOS ball is closed", "[geometry]")
{
    NetworkConfig net;
    CHECK(link_state(Meters(10.0), net) == LinkState::los);
    CHECK(link_state(Meters(20.0), net) == LinkState::los);
    CHECK(link_state(Meters(25.0), net) == LinkState::nlos);
}

TEST_CASE("user geometry relations", "[geometry]")
{
    for (double d : {0.0, 3.0, 15.0, 80.0})
        for (double o : {0.0, 0.3, -1.2})
        {
            const UserGeometry g(Meters(d), Radians(o), Meters(10.0));
            const double z = std::sqrt(d * d + 100.0);
            CHECK_THAT(g.z().value(), WithinRel(z, 1e-15));
            CHECK_THAT(g.tau().value(), WithinRel(z / kSpeedOfLight, 1e-15));
            CHECK_THAT(g.phi().value(), WithinAbs(std::acos(d / z), 1e-15));
            CHECK_THAT(g.psi().value() + g.phi().value() + o, WithinAbs(kPi, 1e-14));
            CHECK(g.phi().value() >= 0.0);
            CHECK(g.phi().value() <= kPi / 2.0);
        }
    CHECK_THROWS_AS(UserGeometry(Meters(-1.0), Radians(0.0), Meters(10.0)), DomainError);
}

TEST_CASE("localization SNR", "[geometry]")
{
    Config cfg;
    const NetworkConfig &net = cfg.net;
    const double noise = net.noise_power();
    const UserGeometry g15(Meters(15.0), Radians(0.0), Meters(10.0));

    // hand evaluation: (c / 4 pi f)^2 * 1 W / (15^2 + 10^2) / (10^-17.4 mW/Hz * 1 GHz)
    const double k = std::pow(299792458.0 / (4.0 * kPi * 28e9), 2);
    const double by_hand = k / 325.0 / (std::pow(10.0, -17.4) * 1e-3 * 1e9);
    CHECK_THAT(snr_localization(g15, 1.0, 1.0, noise, net), WithinRel(by_hand, 1e-12));

    NetworkConfig twice = net;
    twice.p_t *= 2.0;
    CHECK_THAT(snr_localization(g15, 3.0, 2.0, noise, twice),
               WithinRel(2.0 * snr_localization(g15, 3.0, 2.0, noise, net), 1e-14));

    const UserGeometry g0(Meters(0.0), Radians(0.0), Meters(10.0));
    CHECK_THAT(snr_localization(g0, 2.0, 5.0, noise, net),
               WithinRel(net.k_pl * net.p_t * 10.0 * std::pow(10.0, -net.alpha_los) / noise, 1e-14));

    double prev = INFINITY;
    for (double d = 0.0; d <= 200.0; d += 0.5)
    {
        const double s = snr_localization(UserGeometry(Meters(d), Radians(0.0), Meters(10.0)), 4.0, 4.0, noise, net);
        CHECK(s < prev);
        prev = s;
    }
    CHECK_THROWS_AS(snr_localization(g15, 0.0, 1.0, noise, net), DomainError);
}

TEST_CASE("simulated nearest-BS distances follow the cell size law", "[geometry][montecarlo]")
{
    NetworkConfig net;
    const int n = 100000;
    std::vector<double> d;
    d.reserve(n);
    for (int i = 0; i < n; ++i)
    {
        const auto r = sample_deployment(net, 1000 + static_cast<std::uint64_t>(i));
        d.push_back(r.user.d().value());
    }
    std::sort(d.begin(), d.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double f = cell_size_cdf(Meters(d[static_cast<std::size_t>(i)]), net);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.02);
}
