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
#include "beamloc/errors.hpp"

#include <cmath>
#include <complex>

using namespace beamloc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    double norm2(const cvec &v)
    {
        double s = 0.0;
        for (const auto &x : v)
            s += std::norm(x);
        return s;
    }
}

TEST_CASE("sectorized gains", "[antenna]")
{
    NetworkConfig net;
    net.g0 = 1.0;
    net.eps_sidelobe = 0.01;
    CHECK_THAT(sector_gain(Radians(kTwoPi), Lobe::main, net), WithinRel(1.0, 1e-15));
    CHECK_THAT(sector_gain(Radians(1.0), Lobe::side, net), WithinRel(0.01, 1e-15));
    CHECK_THAT(sector_gain(Radians(kPi), Lobe::main, net), WithinRel((kTwoPi - kPi * 0.01) / kPi, 1e-15));
    CHECK_THAT(sector_gain(Radians(kPi), Lobe::main, net), WithinAbs(1.99, 1e-12));
    CHECK_THROWS_AS(sector_gain(Radians(0.0), Lobe::main, net), DomainError);
    CHECK_THROWS_AS(sector_gain(Radians(7.0), Lobe::main, net), DomainError);

    const SectorizedPattern p(Radians(0.3), 5.0, 0.02);
    CHECK(p.gain(Lobe::main) >= p.gain(Lobe::side));
    CHECK_THAT(main_lobe_gain(0.3, NetworkConfig{}), WithinRel(sector_gain(Radians(0.3), Lobe::main, NetworkConfig{}), 1e-15));
}

TEST_CASE("array response", "[antenna]")
{
    const auto ula = UlaArray::half_wavelength(5, 28e9);
    CHECK_THAT(ula.wavenumber_spacing(), WithinRel(kPi, 1e-14));
    const auto a0 = array_response(ula, Radians(0.0));
    for (const auto &x : a0)
        CHECK_THAT(std::abs(x - std::complex<double>(1.0 / std::sqrt(5.0), 0.0)), WithinAbs(0.0, 1e-15));
    for (int m : {1, 2, 7, 32})
        for (double ang : {-1.0, 0.2, 1.3})
            CHECK_THAT(norm2(array_response(UlaArray::half_wavelength(m, 28e9), Radians(ang))), WithinAbs(1.0, 1e-13));

    // endfire: phase step pi
    const auto a2 = array_response(UlaArray::half_wavelength(2, 28e9), Radians(kPi / 2.0));
    CHECK_THAT(std::abs(a2[0] - std::complex<double>(1.0 / std::sqrt(2.0), 0.0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(a2[1] - std::complex<double>(-1.0 / std::sqrt(2.0), 0.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("array response derivative", "[antenna]")
{
    const auto ula = UlaArray::half_wavelength(8, 28e9);
    for (const auto &x : array_response_derivative(ula, Radians(kPi / 2.0)))
        CHECK(std::abs(x) < 1e-15);
    for (double ang : {-0.7, 0.0, 0.4})
        CHECK(std::abs(array_response_derivative(ula, Radians(ang))[0]) == 0.0);

    // central differences shrink as h^2
    const Radians psi(0.37);
    auto fd_error = [&](double h) {
        const auto p = array_response(ula, Radians(psi.value() + h));
        const auto m = array_response(ula, Radians(psi.value() - h));
        const auto d = array_response_derivative(ula, psi);
        double e = 0.0;
        for (std::size_t n = 0; n < d.size(); ++n)
            e += std::norm((p[n] - m[n]) / (2.0 * h) - d[n]);
        return std::sqrt(e);
    };
    const double e1 = fd_error(1e-3);
    const double e2 = fd_error(5e-4);
    CHECK_THAT(e1 / e2, WithinRel(4.0, 0.01));
}

TEST_CASE("beamwidth to element count", "[antenna]")
{
    CHECK(beamwidth_to_elements(Radians(kTwoPi)) == 1);
    CHECK(beamwidth_to_elements(Radians(kPi / 8.0)) == 16);
    CHECK(beamwidth_to_elements(Radians(kPi / 3.0)) == 6);
    int prev = 1 << 30;
    for (double t = 0.05; t <= kTwoPi; t += 0.05)
    {
        const int m = beamwidth_to_elements(Radians(t));
        CHECK(m <= prev);
        CHECK(m >= 1);
        prev = m;
    }
}

TEST_CASE("beamforming gain", "[antenna]")
{
    CHECK_THAT(beamforming_gain(UlaArray::half_wavelength(8, 28e9), Radians(0.4), Radians(0.4)), WithinRel(8.0, 1e-13));
    CHECK_THAT(beamforming_gain(UlaArray::half_wavelength(1, 28e9), Radians(0.1), Radians(1.1)), WithinRel(1.0, 1e-14));

    // brute-force sum for m = 4, steer 0, actual pi/6
    std::complex<double> s(0.0, 0.0);
    for (int n = 0; n < 4; ++n)
        s += std::exp(std::complex<double>(0.0, kPi * n * (std::sin(0.0) - std::sin(kPi / 6.0))));
    CHECK_THAT(beamforming_gain(UlaArray::half_wavelength(4, 28e9), Radians(0.0), Radians(kPi / 6.0)),
               WithinRel(std::norm(s) / 4.0, 1e-13));
}

TEST_CASE("angle information of combiners", "[antenna]")
{
    const auto ula = UlaArray::half_wavelength(6, 28e9);
    // single column carries none
    CHECK_THAT(aoa_information(ula, Radians(0.2), steering_combiner(ula, Radians(0.2))), WithinAbs(0.0, 1e-12));
    // full-rank DFT combiner reaches the closed form
    for (double psi : {0.0, 0.3, -0.8})
        CHECK_THAT(aoa_information(ula, Radians(psi), dft_combiner(6)),
                   WithinRel(aoa_information_full_aperture(6, Radians(psi)), 1e-10));
    CHECK_THAT(aoa_information_full_aperture(4, Radians(0.0)), WithinRel(kPi * kPi * 15.0 / 12.0, 1e-14));
    CHECK(aoa_information_full_aperture(1, Radians(0.0)) == 0.0);
    CHECK(aoa_information_full_aperture(8, Radians(0.0)) > aoa_information_full_aperture(4, Radians(0.0)));
}
