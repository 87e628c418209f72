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

#ifndef BEAMLOC_COVERAGE_HPP
#define BEAMLOC_COVERAGE_HPP

#include "beamloc/config.hpp"
#include "beamloc/format.hpp"
#include "beamloc/localization.hpp"
#include "beamloc/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace beamloc
{
    enum class Method
    {
        analytical,
        montecarlo
    };

    std::string to_string(Method m);

    // T is the linear SINR threshold. j = 0 asks for the whole cell (all k beams).
    struct CoverageQuery
    {
        double threshold = 1.0;
        int j = 0;
        int k = 1;
        Radians theta_u{kPi / 2.0};
        double beta = 0.5;
    };

    // Weighted branch contributions; probability = t0 + t_ma + t_bs
    struct BranchBreakdown
    {
        double t0 = 0.0;   // no error
        double t_ma = 0.0; // misalignment only
        double t_bs = 0.0; // beam-selection error
    };

    struct CoverageResult
    {
        double probability = 0.0;
        Method method = Method::analytical;
        BranchBreakdown breakdown;
        double std_error = 0.0; // 0 for analytical results
    };

    // Error-model switches for degenerate reductions and the exhaustive baseline
    struct ErrorOverrides
    {
        std::optional<double> p_bs; // pin the beam-selection probability at every position
        std::optional<double> p_ma; // pin the misalignment probability at every position
    };

    // Interference exponent A(x, s) of the 1D process: interferers at |y| > x on both sides,
    //   A = 2 lambda * integral_x^inf 1 - (1 + s K P_t G_I q(y)^-alpha(y) / N(y))^-N(y) dy
    // with q^2 = y^2 + h^2 and G_I the interferer gain product. s in 1/W.
    double laplace_interference(double serving_d, double s, double gain_product, const NetworkConfig &net);

    // Alzer form of P(SINR >= T) for a serving link at ground distance x with beam gain product G,
    // interferers seen through sidelobes on both ends (g^2)
    double branch_coverage(double x, double threshold, double gain, const NetworkConfig &net);

    // Pointwise mixture at distance x inside a cell of size d_a
    struct PointCoverage
    {
        double t0 = 0.0;
        double t_ma = 0.0;
        double t_bs = 0.0;
        double p_ma = 0.0;
    };
    PointCoverage point_coverage(double x, double d_a, double threshold, const EstimationModel &est,
                                 const ErrorOverrides &ov = {});

    // Coverage of a user uniform in beam j of row k (or the whole cell when query.j == 0),
    // averaged over the cell size
    CoverageResult coverage_probability(const CoverageQuery &query, const Config &cfg,
                                        const ErrorOverrides &ov = {});

    // Same with a fixed cell size
    CoverageResult coverage_in_cell(const CoverageQuery &query, double d_a, const Config &cfg,
                                    const ErrorOverrides &ov = {});

    // Error-free baseline: both error probabilities pinned to zero
    CoverageResult coverage_probability_exhaustive(const CoverageQuery &query, const Config &cfg);

    // Whole-cell coverage summed over all k beams
    double overall_coverage(double threshold, int k, Radians theta_u, double beta, const Config &cfg);

    // SINR threshold that rate r0 needs at partition beta: 2^(r0 (T_I + T_F) / (beta T_F B)) - 1.
    // Returns +inf when the exponent overflows.
    double rate_threshold(double r0, double beta, const NetworkConfig &net);

    // P(effective rate >= r0); saturates to 0 when the threshold overflows
    double rate_coverage(double r0, double beta, int k, Radians theta_u, const Config &cfg);

    // Shared CSV schema for analytical and simulated results:
    // lambda, k, j, theta_u, beta, threshold, probability, method, stderr
    std::vector<std::string> coverage_csv_header();
    void write_coverage_row(CsvWriter &w, double lambda, const CoverageQuery &q, const CoverageResult &r);
}

#endif
