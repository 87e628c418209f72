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

#include "beamloc/geometry.hpp"
#include "beamloc/errors.hpp"

#include <cmath>

namespace beamloc
{
    UserGeometry::UserGeometry(Meters d, Radians orientation, Meters h_b)
        : d_(d), o_(orientation), z_(std::hypot(d.value(), h_b.value()))
    {
        if (!(d.value() >= 0.0))
            throw DomainError("UserGeometry: ground distance must be non-negative");
        if (!(h_b.value() > 0.0))
            throw DomainError("UserGeometry: BS height must be positive");
    }

    Radians UserGeometry::phi() const
    {
        return Radians(std::acos(d_.value() / z_.value()));
    }

    Radians UserGeometry::psi() const
    {
        return Radians(kPi - phi().value() - o_.value());
    }

    double cell_size_pdf(Meters x, const NetworkConfig &cfg)
    {
        if (x.value() < 0.0)
            throw DomainError("cell_size_pdf: negative distance");
        return 2.0 * cfg.lambda * std::exp(-2.0 * cfg.lambda * x.value());
    }

    double cell_size_cdf(Meters x, const NetworkConfig &cfg)
    {
        if (x.value() < 0.0)
            throw DomainError("cell_size_cdf: negative distance");
        return -std::expm1(-2.0 * cfg.lambda * x.value());
    }

    Meters cell_size_quantile(double u, const NetworkConfig &cfg)
    {
        if (!(u >= 0.0 && u < 1.0))
            throw DomainError("cell_size_quantile: u must be in [0, 1)");
        return Meters(-std::log1p(-u) / (2.0 * cfg.lambda));
    }

    double user_position_pdf(Meters y, Meters d_a)
    {
        if (!(d_a.value() > 0.0))
            throw DomainError("user_position_pdf: cell size must be positive");
        return (y.value() >= 0.0 && y.value() <= d_a.value()) ? 1.0 / d_a.value() : 0.0;
    }

    LinkState link_state(Meters d_ground, const NetworkConfig &cfg)
    {
        return std::abs(d_ground.value()) <= cfg.d_s ? LinkState::los : LinkState::nlos;
    }

    double path_gain(double d_ground, const NetworkConfig &cfg)
    {
        const double z2 = d_ground * d_ground + cfg.h_b * cfg.h_b;
        const double a = path_exponent(link_state(Meters(d_ground), cfg), cfg);
        return cfg.k_pl * cfg.p_t * distance_attenuation(z2, a);
    }

    double snr_localization(const UserGeometry &geom, double gain_b, double gain_u,
                            double noise_power, const NetworkConfig &cfg)
    {
        if (!(gain_b > 0.0 && gain_u > 0.0))
            throw DomainError("snr_localization: gains must be positive");
        return path_gain(geom.d().value(), cfg) * gain_b * gain_u / noise_power;
    }
}
