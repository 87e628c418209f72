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

#ifndef BEAMLOC_UNITS_HPP
#define BEAMLOC_UNITS_HPP

#include <cmath>
#include <compare>
#include <numbers>

namespace beamloc
{
    // Tagged scalar. Construction is explicit so a distance can not be passed where an angle is expected.
    template <class Tag>
    class Quantity
    {
    public:
        constexpr Quantity() = default;
        constexpr explicit Quantity(double v) : v_(v) {}

        [[nodiscard]] constexpr double value() const { return v_; }

        constexpr auto operator<=>(const Quantity &) const = default;

        constexpr Quantity operator+(Quantity o) const { return Quantity(v_ + o.v_); }
        constexpr Quantity operator-(Quantity o) const { return Quantity(v_ - o.v_); }
        constexpr Quantity operator*(double s) const { return Quantity(v_ * s); }
        constexpr Quantity operator/(double s) const { return Quantity(v_ / s); }
        constexpr double operator/(Quantity o) const { return v_ / o.v_; }

    private:
        double v_ = 0.0;
    };

    using Meters = Quantity<struct MetersTag>;
    using Radians = Quantity<struct RadiansTag>;
    using Seconds = Quantity<struct SecondsTag>;

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
    inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
    inline double dbw_to_watts(double dbw) { return db_to_linear(dbw); }
    inline double watts_to_dbm(double w) { return linear_to_db(w) + 30.0; }
}

#endif
