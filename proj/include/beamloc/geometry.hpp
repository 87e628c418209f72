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

#ifndef BEAMLOC_GEOMETRY_HPP
#define BEAMLOC_GEOMETRY_HPP

#include "beamloc/config.hpp"
#include "beamloc/units.hpp"

namespace beamloc
{
    enum class LinkState
    {
        los,
        nlos
    };

    // User seen from its serving BS (one side of the road)
    class UserGeometry
    {
    public:
        UserGeometry(Meters d, Radians orientation, Meters h_b);

        [[nodiscard]] Meters d() const { return d_; }
        [[nodiscard]] Radians orientation() const { return o_; }
        [[nodiscard]] Meters z() const { return z_; }
        [[nodiscard]] Seconds tau() const { return Seconds(z_.value() / kSpeedOfLight); }
        [[nodiscard]] Radians phi() const; // AoD
        [[nodiscard]] Radians psi() const; // AoA

    private:
        Meters d_;
        Radians o_;
        Meters z_;
    };

    // Distance to the nearest BS of the 1D process, density 2*lambda*exp(-2*lambda*x)
    double cell_size_pdf(Meters x, const NetworkConfig &cfg);
    double cell_size_cdf(Meters x, const NetworkConfig &cfg);
    // Inverse CDF, u in [0, 1)
    Meters cell_size_quantile(double u, const NetworkConfig &cfg);

    // Uniform user position inside a cell of size d_a
    double user_position_pdf(Meters y, Meters d_a);

    // Closed LOS ball: d <= d_s is LOS
    LinkState link_state(Meters d_ground, const NetworkConfig &cfg);

    [[nodiscard]] inline double path_exponent(LinkState s, const NetworkConfig &cfg)
    {
        return s == LinkState::los ? cfg.alpha_los : cfg.alpha_nlos;
    }
    [[nodiscard]] inline int nakagami_shape(LinkState s, const NetworkConfig &cfg)
    {
        return s == LinkState::los ? cfg.n_los : cfg.n_nlos;
    }

    // (z^2)^(-alpha/2) with exact fast paths for alpha = 2 and 4
    [[nodiscard]] inline double distance_attenuation(double z2, double alpha)
    {
        if (alpha == 2.0)
            return 1.0 / z2;
        if (alpha == 4.0)
            return 1.0 / (z2 * z2);
        return std::pow(z2, -0.5 * alpha);
    }

    // K * P_t * z^-alpha for a BS at ground distance d, link state from the LOS ball
    double path_gain(double d_ground, const NetworkConfig &cfg);

    // Mean-fading SNR at the estimator: K P_t G_B G_U z^-alpha / noise_power
    double snr_localization(const UserGeometry &geom, double gain_b, double gain_u,
                            double noise_power, const NetworkConfig &cfg);
}

#endif
