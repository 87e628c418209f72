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

#include "beamloc/antenna.hpp"
#include "beamloc/errors.hpp"

#include <cmath>

namespace beamloc
{
    namespace
    {
        void check_beamwidth(double theta, const char *who)
        {
            if (!(theta > 0.0 && theta <= kTwoPi * (1.0 + 1e-12)))
                throw DomainError(std::string(who) + ": beamwidth must be in (0, 2pi]");
        }

        std::complex<double> dot(const cvec &a, const cvec &b) // a^H b
        {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t i = 0; i < a.size(); ++i)
                s += std::conj(a[i]) * b[i];
            return s;
        }
    }

    SectorizedPattern::SectorizedPattern(Radians theta, double g0, double eps)
        : theta_(theta), g0_(g0), eps_(eps)
    {
        check_beamwidth(theta.value(), "SectorizedPattern");
        if (!(g0 > 0.0))
            throw DomainError("SectorizedPattern: G0 must be positive");
        if (!(eps > 0.0 && eps < 1.0))
            throw DomainError("SectorizedPattern: sidelobe fraction must be in (0, 1)");
    }

    double SectorizedPattern::main_gain() const
    {
        const double t = theta_.value();
        return g0_ * (kTwoPi - (kTwoPi - t) * eps_) / t;
    }

    double sector_gain(Radians theta, Lobe lobe, const NetworkConfig &cfg)
    {
        return SectorizedPattern(theta, cfg.g0, cfg.eps_sidelobe).gain(lobe);
    }

    UlaArray::UlaArray(int m, double kappa, double f_c) : m_(m), kappa_(kappa), f_c_(f_c)
    {
        if (m < 1)
            throw DomainError("UlaArray: need at least one element");
        if (!(kappa > 0.0 && f_c > 0.0))
            throw DomainError("UlaArray: spacing and carrier must be positive");
    }

    UlaArray UlaArray::half_wavelength(int m, double f_c)
    {
        return {m, kSpeedOfLight / (2.0 * f_c), f_c};
    }

    cvec array_response(const UlaArray &array, Radians angle)
    {
        const double step = array.wavenumber_spacing() * std::sin(angle.value());
        const double amp = 1.0 / std::sqrt(static_cast<double>(array.m()));
        cvec a(static_cast<std::size_t>(array.m()));
        for (int n = 0; n < array.m(); ++n)
            a[static_cast<std::size_t>(n)] = std::polar(amp, step * n);
        return a;
    }

    cvec array_response_derivative(const UlaArray &array, Radians angle)
    {
        cvec a = array_response(array, angle);
        const double slope = array.wavenumber_spacing() * std::cos(angle.value());
        for (std::size_t n = 0; n < a.size(); ++n)
            a[n] *= std::complex<double>(0.0, slope * static_cast<double>(n));
        return a;
    }

    int beamwidth_to_elements(Radians theta)
    {
        check_beamwidth(theta.value(), "beamwidth_to_elements");
        // 2pi / (pi / 2^i) must land on 2^(i+1), not one above it
        const double r = kTwoPi / theta.value();
        const double c = std::ceil(r - 1e-9 * r);
        return std::max(1, static_cast<int>(c));
    }

    double beamforming_gain(const UlaArray &array, Radians steer, Radians actual)
    {
        const cvec w = array_response(array, steer);
        const cvec a = array_response(array, actual);
        return std::norm(dot(a, w)) * array.m();
    }

    Combiner steering_combiner(const UlaArray &array, Radians steer)
    {
        return {array_response(array, steer)};
    }

    Combiner dft_combiner(int m)
    {
        if (m < 1)
            throw DomainError("dft_combiner: need at least one element");
        Combiner w(static_cast<std::size_t>(m), cvec(static_cast<std::size_t>(m)));
        const double amp = 1.0 / std::sqrt(static_cast<double>(m));
        for (int c = 0; c < m; ++c)
            for (int n = 0; n < m; ++n)
                w[static_cast<std::size_t>(c)][static_cast<std::size_t>(n)] =
                    std::polar(amp, kTwoPi * c * n / static_cast<double>(m));
        return w;
    }

    double aoa_information(const UlaArray &array, Radians psi, const Combiner &w)
    {
        const cvec a = array_response(array, psi);
        const cvec ad = array_response_derivative(array, psi);
        double gd = 0.0;
        double g = 0.0;
        std::complex<double> cross{0.0, 0.0};
        for (const cvec &col : w)
        {
            const auto p = dot(a, col);
            const auto q = dot(ad, col);
            gd += std::norm(q);
            g += std::norm(p);
            cross += p * std::conj(q);
        }
        if (g <= 0.0)
            return 0.0;
        return std::max(0.0, gd - std::norm(cross) / g);
    }

    double aoa_information_full_aperture(int m, Radians psi)
    {
        if (m < 1)
            throw DomainError("aoa_information_full_aperture: need at least one element");
        const double c = std::cos(psi.value());
        const double mm = static_cast<double>(m);
        return kPi * kPi * c * c * (mm * mm - 1.0) / 12.0;
    }
}
