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

#include "beamloc/dictionary.hpp"
#include "beamloc/errors.hpp"

#include <cmath>

using namespace beamloc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("single beam covers the cell", "[dictionary]")
{
    const auto d = build_dictionary(Meters(37.0), Meters(10.0), 4);
    REQUIRE(d.row(1).size() == 1);
    CHECK(d.row(1)[0].d_left.value() == 0.0);
    CHECK_THAT(d.row(1)[0].d_right.value(), WithinRel(37.0, 1e-15));
    CHECK_THAT(d.theta_1().value(), WithinRel(std::atan(3.7), 1e-15));
}

TEST_CASE("two-beam row of a square cell", "[dictionary]")
{
    const auto d = build_dictionary(Meters(10.0), Meters(10.0), 2);
    CHECK_THAT(d.theta_1().value(), WithinRel(kPi / 4.0, 1e-15));
    CHECK_THAT(d.row(2)[0].d_right.value(), WithinAbs(4.1421356, 1e-6));
    CHECK_THAT(d.row(2)[0].d_right.value(), WithinRel(10.0 * std::tan(kPi / 8.0), 1e-14));
    CHECK_THAT(d.row(2)[1].d_right.value(), WithinRel(10.0, 1e-15));
    CHECK_THAT(d.theta(2).value(), WithinRel(kPi / 8.0, 1e-15));
}

TEST_CASE("lookup", "[dictionary]")
{
    const auto d = build_dictionary(Meters(10.0), Meters(10.0), 8);
    for (int k = 1; k <= 8; ++k)
    {
        CHECK(d.lookup(k, Meters(0.0)).j == 1);
        CHECK(d.lookup(k, Meters(10.0)).j == k);
    }
    CHECK(d.lookup(2, Meters(5.0)).j == 2);
    // shared boundary goes left
    const double b = d.row(4)[1].d_right.value();
    CHECK(d.lookup(4, Meters(b)).j == 2);
    CHECK_THROWS_AS(d.lookup(4, Meters(10.5)), DomainError);
    CHECK_THROWS_AS(d.lookup(4, Meters(-0.1)), DomainError);
    CHECK_THROWS_AS(d.row(9), DomainError);
}

TEST_CASE("boundaries and beam location agree with the dictionary", "[dictionary]")
{
    const double d_a = 73.0;
    const auto d = build_dictionary(Meters(d_a), Meters(10.0), 16);
    for (int k = 1; k <= 16; ++k)
    {
        const auto b = beam_boundaries(d_a, 10.0, k);
        REQUIRE(b.size() == static_cast<std::size_t>(k) + 1);
        for (int j = 1; j <= k; ++j)
        {
            CHECK(b[static_cast<std::size_t>(j)] == d.beam(k, j).d_right.value());
            const double mid = 0.5 * (b[static_cast<std::size_t>(j) - 1] + b[static_cast<std::size_t>(j)]);
            CHECK(locate_beam(b, mid) == j);
        }
    }
    CHECK_THROWS_AS(build_dictionary(Meters(0.0), Meters(10.0), 2), DomainError);
    CHECK_THROWS_AS(build_dictionary(Meters(5.0), Meters(10.0), 0), DomainError);
}
