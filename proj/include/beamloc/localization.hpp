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

#ifndef BEAMLOC_LOCALIZATION_HPP
#define BEAMLOC_LOCALIZATION_HPP

#include "beamloc/config.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/geometry.hpp"
#include "beamloc/quadrature.hpp"
#include "beamloc/units.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace beamloc
{
    // Gaussian tail Q(x) = erfc(x / sqrt 2) / 2 and its inverse
    double q_function(double x);
    double q_inverse(double p);

    struct LocalizationBounds
    {
        double sigma_d2 = 0.0;   // m^2
        double sigma_psi2 = 0.0; // rad^2
        double zeta = 0.0;       // observation energy factor
    };

    // 2 K P_t z^-alpha B t_obs / N_est. Beam gains cancel against the SNR definition.
    double observation_zeta(double d_ground, double t_obs, const Config &cfg);

    // Distance bound from zeta and main-lobe gains: 3 c^2 / (zeta G_B G_U B^2 pi^2)
    double distance_bound(double zeta, double gain_b, double gain_u, double bandwidth);

    // AoA bound: 1 / (zeta G_B I) with I the combiner angle information
    double aoa_bound(double zeta, double gain_b, double angle_information);

    // Both bounds for a geometry, beam pair and observation time.
    // The UE array is steered so the BS sits on its boresight.
    LocalizationBounds crlb(const UserGeometry &geom, Radians theta_b, Radians theta_u, Seconds t_obs,
                            const Config &cfg);

    // UE aperture used for AoA estimation: loc.ue_elements, or beamwidth_to_elements(theta_u) when that is 0
    int ue_aperture(Radians theta_u, const Config &cfg);

    // Data-phase variants, observation time (1 - beta) T_F. beta outside [0, 1) raises DomainError.
    double crlb_distance(const UserGeometry &geom, Radians theta_b, Radians theta_u, double beta, const Config &cfg);

    // nullopt: the combiner carries no angle information (single element), AoA unidentifiable
    std::optional<double> crlb_aoa(const UserGeometry &geom, Radians theta_b, Radians theta_u, double beta,
                                   const Config &cfg);

    // Error probability for a user at d inside beam [d_L, d_R]
    double p_beam_selection(Meters d, double sigma_d2, const BeamEntry &beam);

    // Same, for a beam of a row whose outer edges are the cell edges: estimates that fall outside the
    // cell are clamped back into it, so the outer edges never cause an error
    double p_beam_selection_in_cell(double d, double sigma_d, const std::vector<double> &bounds, int j);

    // 2 Q(nu / sigma_psi)
    double p_misalignment(double sigma_psi2, double nu);

    // Position-dependent estimation variances for one data-phase operating point
    class EstimationModel
    {
    public:
        EstimationModel(const Config &cfg, int k, Radians theta_u, Seconds t_obs);
        static EstimationModel for_beta(const Config &cfg, int k, Radians theta_u, double beta);

        [[nodiscard]] int k() const { return k_; }
        [[nodiscard]] double theta_u() const { return theta_u_; }
        [[nodiscard]] double t_obs() const { return t_obs_; }
        [[nodiscard]] double nu() const { return nu_; }
        [[nodiscard]] const NetworkConfig &net() const { return net_; }

        [[nodiscard]] double theta_k(double d_a) const;
        [[nodiscard]] double gain_b(double d_a) const;
        [[nodiscard]] double gain_u() const { return gain_u_; }
        [[nodiscard]] double sigma_d2(double x, double d_a) const;
        [[nodiscard]] double sigma_psi2(double x, double d_a) const;

        // Test hooks: pin a variance to a constant
        void override_sigma_d2(double v) { sigma_d2_override_ = v; }
        void override_sigma_psi2(double v) { sigma_psi2_override_ = v; }
        void override_nu(double v) { nu_ = v; }

    private:
        NetworkConfig net_;
        double est_noise_;
        double aoa_info_;
        int k_;
        double theta_u_;
        double t_obs_;
        double nu_;
        double gain_u_;
        std::optional<double> sigma_d2_override_;
        std::optional<double> sigma_psi2_override_;
    };

    // Cell-conditioned averages for a fixed cell size d_a
    double cell_beam_selection_error(const EstimationModel &m, double d_a);
    double cell_misalignment_error(const EstimationModel &m, double d_a);

    // Averages over cell size and user position
    double avg_beam_selection_error(const EstimationModel &m);
    double avg_misalignment_error(const EstimationModel &m);
    double avg_beam_selection_error(int k, double beta, Radians theta_u, const Config &cfg);
    double avg_misalignment_error(int k, Radians theta_u, double beta, const Config &cfg);

    // Adaptive reference for E[f(d_a)], d_a ~ Exp(2 lambda), integrated in d_a against the density up to 40 e-foldings
    // (the dropped mass is e^-40). breaks: cell sizes where f has a kink; the integral is split there.
    template <class F>
    double expect_over_cells(F &&f, const NetworkConfig &net, double rel_tol, const char *where,
                             std::vector<double> breaks = {})
    {
        const double rate = 2.0 * net.lambda;
        const double top = 40.0 / rate;
        auto g = [&](double d_a) { return f(d_a) * rate * std::exp(-rate * d_a); };
        std::vector<double> cuts{0.0, top};
        for (double b : breaks)
            if (b > 0.0 && b < top)
                cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            s += quad::adaptive(g, cuts[i], cuts[i + 1], rel_tol, where);
        return s;
    }

    // Cell sizes at which a boundary of row k crosses the LOS radius
    std::vector<double> los_crossings(int k, const NetworkConfig &net);

    struct QuadNode
    {
        double x;
        double w;
    };

    // Fixed rule for E[f(d_a)], d_a ~ Exp(2 lambda): 10-point Gauss-Legendre panels between quantile edges,
    // graded 5-point panels toward d_a = 0,
    // the LOS crossings of row k and 40 e-foldings. Weights include the density. refine > 1 splits every panel.
    std::vector<QuadNode> cell_size_rule(int k, const NetworkConfig &net, int refine = 1);
}

#endif
