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

#ifndef BEAMLOC_ANTENNA_HPP
#define BEAMLOC_ANTENNA_HPP

#include "beamloc/config.hpp"
#include "beamloc/units.hpp"

#include <complex>
#include <vector>

namespace beamloc
{
    using cvec = std::vector<std::complex<double>>;

    enum class Lobe
    {
        main,
        side
    };

    // Two-level pattern: gamma(theta) over the main lobe, g = G0 * eps elsewhere
    class SectorizedPattern
    {
    public:
        SectorizedPattern(Radians theta, double g0, double eps);

        [[nodiscard]] Radians theta() const { return theta_; }
        [[nodiscard]] double main_gain() const;
        [[nodiscard]] double side_gain() const { return g0_ * eps_; }
        [[nodiscard]] double gain(Lobe lobe) const { return lobe == Lobe::main ? main_gain() : side_gain(); }

    private:
        Radians theta_;
        double g0_;
        double eps_;
    };

    double sector_gain(Radians theta, Lobe lobe, const NetworkConfig &cfg);

    // Unchecked main-lobe gain for inner loops, theta in (0, 2pi]
    [[nodiscard]] inline double main_lobe_gain(double theta, const NetworkConfig &cfg)
    {
        return cfg.g0 * (kTwoPi - (kTwoPi - theta) * cfg.eps_sidelobe) / theta;
    }

    // Uniform linear array, element spacing kappa
    class UlaArray
    {
    public:
        UlaArray(int m, double kappa, double f_c);
        static UlaArray half_wavelength(int m, double f_c);

        [[nodiscard]] int m() const { return m_; }
        [[nodiscard]] double kappa() const { return kappa_; }
        [[nodiscard]] double f_c() const { return f_c_; }
        // 2 pi kappa f_c / c
        [[nodiscard]] double wavenumber_spacing() const { return kTwoPi * kappa_ * f_c_ / kSpeedOfLight; }

    private:
        int m_;
        double kappa_;
        double f_c_;
    };

    // a_n = exp(i n k sin(angle)) / sqrt(m), n = 0..m-1
    cvec array_response(const UlaArray &array, Radians angle);

    // d a / d angle: element n times i n k cos(angle)
    cvec array_response_derivative(const UlaArray &array, Radians angle);

    // m = max(1, ceil(2 pi / theta))
    int beamwidth_to_elements(Radians theta);

    // |a(actual)^H w|^2 * m with w = a(steer); equals m when matched
    double beamforming_gain(const UlaArray &array, Radians steer, Radians actual);

    // Combiner as a set of unit-norm columns
    using Combiner = std::vector<cvec>;

    Combiner steering_combiner(const UlaArray &array, Radians steer);
    Combiner dft_combiner(int m);

    // Angle information carried by a combiner:
    //   sum |adot^H w_c|^2 - |sum (a^H w_c)(w_c^H adot)|^2 / sum |a^H w_c|^2
    // Zero for any single-column combiner.
    double aoa_information(const UlaArray &array, Radians psi, const Combiner &w);

    // Closed form of aoa_information for a full-rank unitary combiner on a half-wavelength ULA:
    // pi^2 cos^2(psi) (m^2 - 1) / 12
    double aoa_information_full_aperture(int m, Radians psi);
}

#endif
