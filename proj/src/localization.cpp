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

#include "beamloc/localization.hpp"
#include "beamloc/antenna.hpp"
#include "beamloc/errors.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace beamloc
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();
        constexpr double kLayerSigmas = 12.0; // Q(12) ~ 1.8e-33
        constexpr int kLayerPanels = 3;
        constexpr double kInnerTol = 1e-10;

        void check_beta(double beta, const char *who)
        {
            if (!(beta >= 0.0 && beta < 1.0))
                throw DomainError(std::string(who) + ": beta must be in [0, 1); beta = 1 leaves no localization time");
        }

        // Q(dist / sigma) with the sigma = 0 limit spelled out
        double tail(double dist, double sigma)
        {
            if (sigma == 0.0)
                return dist == 0.0 ? 0.5 : 0.0;
            return q_function(dist / sigma);
        }

        // Integral over [lo, hi] split at the LOS radius, where the variances jump
        template <class F>
        double integrate_split(F &&f, double lo, double hi, double d_s, double tol, const char *where)
        {
            if (d_s > lo && d_s < hi)
                return quad::adaptive(f, lo, d_s, tol, where) + quad::adaptive(f, d_s, hi, tol, where);
            return quad::adaptive(f, lo, hi, tol, where);
        }
    }

    namespace
    {
        // Composite 20-point Gauss-Legendre with a fixed panel count, split at d_s.
        // A fixed count keeps the result smooth in the cell size, which the outer adaptive rule needs.
        template <class F>
        double panels(F &&f, double a, double c, double d_s)
        {
            auto run = [&](double lo, double hi) {
                if (!(hi > lo))
                    return 0.0;
                const double w = (hi - lo) / kLayerPanels;
                double s = 0.0;
                for (int i = 0; i < kLayerPanels; ++i)
                    s += quad::fixed20(f, lo + i * w, lo + (i + 1) * w);
                return s;
            };
            if (d_s > a && d_s < c)
                return run(a, d_s) + run(d_s, c);
            return run(a, c);
        }
    }

    double q_function(double x)
    {
        return 0.5 * std::erfc(x / std::sqrt(2.0));
    }

    double q_inverse(double p)
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("q_inverse: p must be in [0, 1]");
        if (p == 0.0)
            return kInf;
        if (p == 1.0)
            return -kInf;
        return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
    }

    double observation_zeta(double d_ground, double t_obs, const Config &cfg)
    {
        if (!(t_obs >= 0.0))
            throw DomainError("observation_zeta: negative observation time");
        return 2.0 * path_gain(d_ground, cfg.net) * cfg.net.bandwidth * t_obs / cfg.loc.est_noise;
    }

    double distance_bound(double zeta, double gain_b, double gain_u, double bandwidth)
    {
        if (!(zeta > 0.0))
            return kInf;
        return 3.0 * kSpeedOfLight * kSpeedOfLight / (zeta * gain_b * gain_u * bandwidth * bandwidth * kPi * kPi);
    }

    double aoa_bound(double zeta, double gain_b, double angle_information)
    {
        if (!(zeta > 0.0 && angle_information > 0.0))
            return kInf;
        return 1.0 / (zeta * gain_b * angle_information);
    }

    int ue_aperture(Radians theta_u, const Config &cfg)
    {
        return cfg.loc.ue_elements > 0 ? cfg.loc.ue_elements : beamwidth_to_elements(theta_u);
    }

    LocalizationBounds crlb(const UserGeometry &geom, Radians theta_b, Radians theta_u, Seconds t_obs,
                            const Config &cfg)
    {
        const double zeta = observation_zeta(geom.d().value(), t_obs.value(), cfg);
        const double gb = sector_gain(theta_b, Lobe::main, cfg.net);
        const double gu = sector_gain(theta_u, Lobe::main, cfg.net);
        const int m = ue_aperture(theta_u, cfg);
        const double info = aoa_information_full_aperture(m, Radians(0.0));
        return {distance_bound(zeta, gb, gu, cfg.net.bandwidth), aoa_bound(zeta, gb, info), zeta};
    }

    double crlb_distance(const UserGeometry &geom, Radians theta_b, Radians theta_u, double beta, const Config &cfg)
    {
        check_beta(beta, "crlb_distance");
        return crlb(geom, theta_b, theta_u, Seconds((1.0 - beta) * cfg.net.t_frame), cfg).sigma_d2;
    }

    std::optional<double> crlb_aoa(const UserGeometry &geom, Radians theta_b, Radians theta_u, double beta,
                                   const Config &cfg)
    {
        check_beta(beta, "crlb_aoa");
        if (ue_aperture(theta_u, cfg) < 2)
            return std::nullopt;
        return crlb(geom, theta_b, theta_u, Seconds((1.0 - beta) * cfg.net.t_frame), cfg).sigma_psi2;
    }

    double p_beam_selection(Meters d, double sigma_d2, const BeamEntry &beam)
    {
        if (!beam.contains(d))
            throw DomainError("p_beam_selection: d outside the beam interval");
        if (!(sigma_d2 >= 0.0))
            throw DomainError("p_beam_selection: negative variance");
        const double s = std::sqrt(sigma_d2);
        // 1 - Q((d_L - d)/s) == Q((d - d_L)/s), kept in tail form for accuracy
        return tail((d - beam.d_left).value(), s) + tail((beam.d_right - d).value(), s);
    }

    double p_beam_selection_in_cell(double d, double sigma_d, const std::vector<double> &bounds, int j)
    {
        const int k = static_cast<int>(bounds.size()) - 1;
        if (j < 1 || j > k)
            throw DomainError("p_beam_selection_in_cell: beam index out of range");
        double p = 0.0;
        if (j > 1)
            p += tail(d - bounds[static_cast<std::size_t>(j) - 1], sigma_d);
        if (j < k)
            p += tail(bounds[static_cast<std::size_t>(j)] - d, sigma_d);
        return std::min(1.0, p);
    }

    double p_misalignment(double sigma_psi2, double nu)
    {
        if (!(nu >= 0.0))
            throw DomainError("p_misalignment: nu must be >= 0");
        if (!(sigma_psi2 >= 0.0))
            throw DomainError("p_misalignment: negative variance");
        if (nu == 0.0)
            return 1.0;
        return std::min(1.0, 2.0 * tail(nu, std::sqrt(sigma_psi2)));
    }

    EstimationModel::EstimationModel(const Config &cfg, int k, Radians theta_u, Seconds t_obs)
        : net_(cfg.net), est_noise_(cfg.loc.est_noise), aoa_info_(0.0), k_(k), theta_u_(theta_u.value()),
          t_obs_(t_obs.value()), nu_(cfg.loc.nu_fraction * theta_u.value()), gain_u_(0.0)
    {
        if (k < 1)
            throw DomainError("EstimationModel: k must be >= 1");
        if (!(t_obs_ >= 0.0))
            throw DomainError("EstimationModel: negative observation time");
        gain_u_ = sector_gain(theta_u, Lobe::main, net_);
        const int m = ue_aperture(theta_u, cfg);
        if (m >= 2)
            aoa_info_ = aoa_information_full_aperture(m, Radians(0.0));
    }

    EstimationModel EstimationModel::for_beta(const Config &cfg, int k, Radians theta_u, double beta)
    {
        if (!(beta > 0.0 && beta <= 1.0))
            throw DomainError("EstimationModel: beta must be in (0, 1]");
        return {cfg, k, theta_u, Seconds((1.0 - beta) * cfg.net.t_frame)};
    }

    double EstimationModel::theta_k(double d_a) const
    {
        return std::atan(d_a / net_.h_b) / k_;
    }

    double EstimationModel::gain_b(double d_a) const
    {
        return main_lobe_gain(theta_k(d_a), net_);
    }

    double EstimationModel::sigma_d2(double x, double d_a) const
    {
        if (sigma_d2_override_)
            return *sigma_d2_override_;
        const double zeta = 2.0 * path_gain(x, net_) * net_.bandwidth * t_obs_ / est_noise_;
        return distance_bound(zeta, gain_b(d_a), gain_u_, net_.bandwidth);
    }

    double EstimationModel::sigma_psi2(double x, double d_a) const
    {
        if (sigma_psi2_override_)
            return *sigma_psi2_override_;
        const double zeta = 2.0 * path_gain(x, net_) * net_.bandwidth * t_obs_ / est_noise_;
        return aoa_bound(zeta, gain_b(d_a), aoa_info_);
    }

    double cell_beam_selection_error(const EstimationModel &m, double d_a)
    {
        const int k = m.k();
        if (k == 1 || !(d_a > 0.0))
            return 0.0;
        const auto b = beam_boundaries(d_a, m.net().h_b, k);
        const double d_s = m.net().d_s;
        auto sigma = [&](double x) { return std::sqrt(m.sigma_d2(x, d_a)); };

        // Error mass only lives within a few sigma of each interior boundary
        auto layer = [&](double bnd, double far) {
            const double lo = std::min(bnd, far);
            const double hi = std::max(bnd, far);
            double smax = std::max(sigma(lo), sigma(hi));
            if (d_s > lo && d_s < hi)
                smax = std::max({smax, sigma(d_s), sigma(std::nextafter(d_s, kInf))});
            if (smax == 0.0)
                return 0.0;
            const double width = std::min(hi - lo, kLayerSigmas * smax);
            const double a = far > bnd ? bnd : bnd - width;
            const double c = far > bnd ? bnd + width : bnd;
            auto f = [&](double x) { return tail(std::abs(x - bnd), sigma(x)); };
            return panels(f, a, c, d_s);
        };

        double total = 0.0;
        for (int j = 1; j < k; ++j)
        {
            const auto ju = static_cast<std::size_t>(j);
            total += layer(b[ju], b[ju - 1]);
            total += layer(b[ju], b[ju + 1]);
        }
        return std::clamp(total / d_a, 0.0, 1.0);
    }

    double cell_misalignment_error(const EstimationModel &m, double d_a)
    {
        if (!(d_a > 0.0))
            return p_misalignment(m.sigma_psi2(0.0, 0.0), m.nu());
        auto f = [&](double x) { return p_misalignment(m.sigma_psi2(x, d_a), m.nu()); };
        const double total = integrate_split(f, 0.0, d_a, m.net().d_s, kInnerTol, "avg_misalignment_error");
        return std::clamp(total / d_a, 0.0, 1.0);
    }

    std::vector<double> los_crossings(int k, const NetworkConfig &net)
    {
        // h tan(j theta_1 / k) = d_s  =>  theta_1 = k atan(d_s / h) / j
        std::vector<double> out;
        const double a = std::atan(net.d_s / net.h_b);
        for (int j = 1; j < k; ++j)
        {
            const double t1 = k * a / j;
            if (t1 < 0.5 * kPi)
                out.push_back(net.h_b * std::tan(t1));
        }
        out.push_back(net.d_s);
        return out;
    }

    std::vector<QuadNode> cell_size_rule(int k, const NetworkConfig &net, int refine)
    {
        if (!(net.lambda > 0.0))
            throw DomainError("cell_size_rule: lambda must be positive");
        const double rate = 2.0 * net.lambda;
        const double top = 40.0 / rate;
        std::vector<double> e{0.0};
        for (double u : {1.0 / 16, 1.0 / 8, 1.0 / 4, 3.0 / 8, 1.0 / 2, 5.0 / 8, 3.0 / 4, 7.0 / 8, 15.0 / 16})
            e.push_back(-std::log1p(-u) / rate);
        for (double t : {4.0, 6.0, 9.0, 14.0, 22.0, 40.0})
            e.push_back(t / rate);
        for (double b : los_crossings(k, net))
            if (b < top)
                e.push_back(b);
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());

        std::vector<QuadNode> out;
        auto push = [&](double x, double w) { out.push_back({x, w * rate * std::exp(-rate * x)}); };
        // small cells: per-cell error grows like sigma / d_a, graded panels down to 1 um
        for (double lo = 1e-6; lo < e[1]; lo *= 4.0)
            quad::nodes<5>(lo, std::min(4.0 * lo, e[1]), push);
        quad::nodes<5>(0.0, std::min(1e-6, e[1]), push);
        for (std::size_t i = 1; i + 1 < e.size(); ++i)
        {
            const double h = (e[i + 1] - e[i]) / refine;
            for (int r = 0; r < refine; ++r)
                quad::nodes<10>(e[i] + r * h, e[i] + (r + 1) * h, push);
        }
        return out;
    }

    double avg_beam_selection_error(const EstimationModel &m)
    {
        if (m.k() == 1)
            return 0.0;
        double p = 0.0;
        for (const QuadNode &n : cell_size_rule(m.k(), m.net()))
            p += n.w * cell_beam_selection_error(m, n.x);
        if (!std::isfinite(p))
            throw NumericError("avg_beam_selection_error", "non-finite average");
        return std::clamp(p, 0.0, 1.0);
    }

    double avg_misalignment_error(const EstimationModel &m)
    {
        double p = 0.0;
        for (const QuadNode &n : cell_size_rule(m.k(), m.net()))
            p += n.w * cell_misalignment_error(m, n.x);
        if (!std::isfinite(p))
            throw NumericError("avg_misalignment_error", "non-finite average");
        return std::clamp(p, 0.0, 1.0);
    }

    double avg_beam_selection_error(int k, double beta, Radians theta_u, const Config &cfg)
    {
        return avg_beam_selection_error(EstimationModel::for_beta(cfg, k, theta_u, beta));
    }

    double avg_misalignment_error(int k, Radians theta_u, double beta, const Config &cfg)
    {
        return avg_misalignment_error(EstimationModel::for_beta(cfg, k, theta_u, beta));
    }
}
