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

#include "beamloc/coverage.hpp"
#include "beamloc/antenna.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/errors.hpp"
#include "beamloc/geometry.hpp"
#include "beamloc/quadrature.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace beamloc
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();
        constexpr double kLayerSigmas = 12.0;
        constexpr int kLayerSubpanels = 3;
        constexpr double kExpFloor = 745.0; // exp(-745) underflows to 0

        // 1 - (1 + u)^-n without cancellation for small u
        double one_minus_pow(double u, int n)
        {
            return -std::expm1(-n * std::log1p(u));
        }

        // Panels: LOS part no wider than los_panel, NLOS part grows geometrically
        std::vector<double> panel_edges(double lo, double hi, double d_s, double h, double los_panel)
        {
            std::vector<double> e{lo};
            if (!(hi > lo))
                return e;
            if (lo < d_s)
            {
                const double m = std::min(hi, d_s);
                const int n = std::max(1, static_cast<int>(std::ceil((m - lo) / los_panel)));
                for (int i = 1; i <= n; ++i)
                    e.push_back(lo + (m - lo) * i / n);
            }
            double x = std::max(lo, d_s);
            while (x < hi)
            {
                x = std::min(hi, std::max(2.0 * x, x + h));
                e.push_back(x);
            }
            return e;
        }

        struct Mix
        {
            double w0 = 0.0;  // (1 - P_MA) T_0
            double wma = 0.0; // P_MA T_MA
            double tbs = 0.0; // T_BS
        };

        Mix mix_at(double x, double d_a, double threshold, const EstimationModel &est, const ErrorOverrides &ov)
        {
            const PointCoverage p = point_coverage(x, d_a, threshold, est, ov);
            return {(1.0 - p.p_ma) * p.t0, p.p_ma * p.t_ma, p.t_bs};
        }

        constexpr int kChebDeg = 8;

        // Piecewise Chebyshev interpolant of the mixture over [lo, hi]: LOS panels no wider than h,
        // NLOS panels doubling, a panel edge at d_s where the serving link switches state
        class CellInterpolant
        {
        public:
            template <class F>
            CellInterpolant(double lo, double hi, const NetworkConfig &net, F &&eval)
                : edges_(panel_edges(lo, hi, net.d_s, net.h_b, net.h_b))
            {
                const std::size_t np = edges_.size() - 1;
                x_.resize(np);
                v_.resize(np);
                for (std::size_t p = 0; p < np; ++p)
                {
                    const double a = edges_[p];
                    const double c = edges_[p + 1];
                    const bool right_of_ds = a >= net.d_s;
                    for (int i = 0; i <= kChebDeg; ++i)
                    {
                        double x = 0.5 * (a + c) - 0.5 * (c - a) * std::cos(kPi * i / kChebDeg);
                        if (i == 0)
                            x = a;
                        if (i == kChebDeg)
                            x = c;
                        x_[p][static_cast<std::size_t>(i)] = x;
                        // the closed LOS ball puts d_s itself on the LOS side
                        const double xe = (right_of_ds && x <= net.d_s) ? std::nextafter(net.d_s, kInf) : x;
                        v_[p][static_cast<std::size_t>(i)] = eval(xe);
                    }
                }
            }

            [[nodiscard]] const std::vector<double> &edges() const { return edges_; }

            // Evaluate on panel p (x inside it)
            [[nodiscard]] Mix on_panel(std::size_t p, double x) const
            {
                double den = 0.0;
                Mix num;
                for (int i = 0; i <= kChebDeg; ++i)
                {
                    const auto iu = static_cast<std::size_t>(i);
                    const double dx = x - x_[p][iu];
                    if (dx == 0.0)
                        return v_[p][iu];
                    double w = (i % 2 == 0) ? 1.0 : -1.0;
                    if (i == 0 || i == kChebDeg)
                        w *= 0.5;
                    const double t = w / dx;
                    den += t;
                    num.w0 += t * v_[p][iu].w0;
                    num.wma += t * v_[p][iu].wma;
                    num.tbs += t * v_[p][iu].tbs;
                }
                return {num.w0 / den, num.wma / den, num.tbs / den};
            }

        private:
            std::vector<double> edges_;
            std::vector<std::array<double, kChebDeg + 1>> x_;
            std::vector<std::array<Mix, kChebDeg + 1>> v_;
        };

        // Gaussian tails of one interior boundary, to the left and right up to the neighbouring boundaries.
        // A zero extent drops that side.
        struct Boundary
        {
            double bnd;
            double left;
            double right;
        };

        // Unnormalized integrals of the three weighted branches over [lo, hi] of a cell of size d_a
        BranchBreakdown integrate_cell(double lo, double hi, const std::vector<Boundary> &bounds, double d_a,
                                       double threshold, const EstimationModel &est, const ErrorOverrides &ov)
        {
            const NetworkConfig &net = est.net();
            const double d_s = net.d_s;
            const CellInterpolant mix(lo, hi, net, [&](double x) { return mix_at(x, d_a, threshold, est, ov); });
            const auto &edges = mix.edges();

            Mix smooth;
            for (std::size_t p = 0; p + 1 < edges.size(); ++p)
                quad::nodes<20>(edges[p], edges[p + 1], [&](double x, double w) {
                    const Mix m = mix.on_panel(p, x);
                    smooth.w0 += w * m.w0;
                    smooth.wma += w * m.wma;
                    smooth.tbs += w * m.tbs;
                });

            if (ov.p_bs)
            {
                const double p = *ov.p_bs;
                return {(1.0 - p) * smooth.w0, (1.0 - p) * smooth.wma, p * smooth.tbs};
            }

            // P_BS lives near interior boundaries: integral of the Gaussian tail times the mixture
            // around each boundary, split at every panel edge and at the boundary itself
            Mix corr;
            auto sigma = [&](double x) { return std::sqrt(est.sigma_d2(x, d_a)); };
            auto side_width = [&](double a0, double c0) {
                if (!(c0 > a0))
                    return 0.0;
                double smax = std::max(sigma(a0), sigma(c0));
                if (d_s > a0 && d_s < c0)
                    smax = std::max({smax, sigma(d_s), sigma(std::nextafter(d_s, kInf))});
                return std::min(c0 - a0, kLayerSigmas * smax);
            };
            auto tails = [&](const Boundary &B, std::size_t p, double sa, double sc) {
                const double sub = (sc - sa) / kLayerSubpanels;
                for (int s = 0; s < kLayerSubpanels; ++s)
                    quad::nodes<20>(sa + s * sub, sa + (s + 1) * sub, [&](double x, double w) {
                        const double sg = sigma(x);
                        const double t = sg == 0.0 ? 0.0 : q_function(std::abs(x - B.bnd) / sg);
                        if (t == 0.0)
                            return;
                        const Mix m = mix.on_panel(p, x);
                        corr.w0 += w * t * m.w0;
                        corr.wma += w * t * m.wma;
                        corr.tbs += w * t * m.tbs;
                    });
            };
            for (const Boundary &B : bounds)
            {
                const double a = B.bnd - side_width(B.bnd - B.left, B.bnd);
                const double c = B.bnd + side_width(B.bnd, B.bnd + B.right);
                if (!(c > a))
                    continue;
                // panels overlapping [a, c]
                auto first = std::upper_bound(edges.begin(), edges.end(), a);
                std::size_t p = first == edges.begin() ? 0 : static_cast<std::size_t>(first - edges.begin()) - 1;
                for (; p + 1 < edges.size() && edges[p] < c; ++p)
                {
                    const double pa = std::max(a, edges[p]);
                    const double pc = std::min(c, edges[p + 1]);
                    if (!(pc > pa))
                        continue;
                    if (B.bnd > pa && B.bnd < pc)
                    {
                        tails(B, p, pa, B.bnd);
                        tails(B, p, B.bnd, pc);
                    }
                    else
                        tails(B, p, pa, pc);
                }
            }
            return {smooth.w0 - corr.w0, smooth.wma - corr.wma, corr.tbs};
        }

        BranchBreakdown cell_breakdown(const CoverageQuery &q, double d_a, const EstimationModel &est,
                                       const ErrorOverrides &ov)
        {
            const auto b = beam_boundaries(d_a, est.net().h_b, q.k);
            std::vector<Boundary> bounds;
            double lo = 0.0;
            double hi = d_a;
            if (q.j == 0)
            {
                for (int j = 1; j < q.k; ++j)
                {
                    const auto ju = static_cast<std::size_t>(j);
                    bounds.push_back({b[ju], b[ju] - b[ju - 1], b[ju + 1] - b[ju]});
                }
            }
            else
            {
                const auto ju = static_cast<std::size_t>(q.j);
                lo = b[ju - 1];
                hi = b[ju];
                if (q.j > 1)
                    bounds.push_back({lo, 0.0, hi - lo});
                if (q.j < q.k)
                    bounds.push_back({hi, hi - lo, 0.0});
            }
            BranchBreakdown r = integrate_cell(lo, hi, bounds, d_a, q.threshold, est, ov);
            const double len = hi - lo;
            if (!(len > 0.0))
                return {};
            r.t0 /= len;
            r.t_ma /= len;
            r.t_bs /= len;
            return r;
        }

        void check_query(const CoverageQuery &q)
        {
            if (!(q.threshold > 0.0))
                throw DomainError("coverage: threshold must be positive");
            if (q.k < 1 || q.j < 0 || q.j > q.k)
                throw DomainError("coverage: need 1 <= j <= k (or j = 0 for the whole cell)");
            if (!(q.beta > 0.0 && q.beta <= 1.0))
                throw DomainError("coverage: beta must be in (0, 1]");
        }

        CoverageResult finish(BranchBreakdown b, const char *where)
        {
            auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
            b = {clamp01(b.t0), clamp01(b.t_ma), clamp01(b.t_bs)};
            const double p = b.t0 + b.t_ma + b.t_bs;
            if (!std::isfinite(p))
                throw NumericError(where, "non-finite coverage");
            return {std::min(1.0, p), Method::analytical, b, 0.0};
        }

    }

    std::string to_string(Method m)
    {
        return m == Method::analytical ? "analytical" : "montecarlo";
    }

    double laplace_interference(double serving_d, double s, double gain_product, const NetworkConfig &net)
    {
        if (!(serving_d >= 0.0))
            throw DomainError("laplace_interference: serving distance must be >= 0");
        if (!(net.lambda > 0.0) || !(s > 0.0) || !(gain_product > 0.0))
            return 0.0;
        if (!std::isfinite(s))
            throw DomainError("laplace_interference: infinite threshold scale");
        const double c = s * net.k_pl * net.p_t * gain_product;
        const double h2 = net.h_b * net.h_b;
        double sum = 0.0;

        if (serving_d < net.d_s)
        {
            const int n = net.n_los;
            const double al = net.alpha_los;
            auto f = [&](double y) { return one_minus_pow(c * distance_attenuation(y * y + h2, al) / n, n); };
            const double mid = 0.5 * (serving_d + net.d_s);
            sum += quad::fixed20(f, serving_d, mid) + quad::fixed20(f, mid, net.d_s);
        }

        // NLOS tail, y = b + L v / (1 - v)
        const int n = net.n_nlos;
        const double an = net.alpha_nlos;
        const double b = std::max(serving_d, net.d_s);
        const double L = std::max({net.h_b, b, std::pow(c / n, 1.0 / an)});
        auto g = [&](double v) {
            if (v >= 1.0)
                return 0.0;
            const double y = b + L * v / (1.0 - v);
            const double jac = L / ((1.0 - v) * (1.0 - v));
            return one_minus_pow(c * distance_attenuation(y * y + h2, an) / n, n) * jac;
        };
        sum += quad::fixed20(g, 0.0, 0.5) + quad::fixed20(g, 0.5, 0.8) + quad::fixed20(g, 0.8, 1.0);

        const double a = 2.0 * net.lambda * sum;
        if (!std::isfinite(a))
            throw NumericError("laplace_interference", "non-finite exponent");
        return a;
    }

    double branch_coverage(double x, double threshold, double gain, const NetworkConfig &net)
    {
        if (!(threshold > 0.0))
            return 1.0;
        if (!std::isfinite(threshold))
            return 0.0;
        const LinkState st = link_state(Meters(x), net);
        const int n = nakagami_shape(st, net);
        const double pg = path_gain(x, net) * gain;
        const double eta = n * std::pow(std::tgamma(n + 1.0), -1.0 / n);
        const double g2 = net.sidelobe_gain() * net.sidelobe_gain();
        const double noise = net.noise_power();
        double sum = 0.0;
        for (int i = 1; i <= n; ++i)
        {
            const double s = i * eta * threshold / pg;
            const double e0 = s * noise;
            if (e0 > kExpFloor)
                continue;
            const double e = e0 + laplace_interference(x, s, g2, net);
            if (e > kExpFloor)
                continue;
            const double c = boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                                        static_cast<unsigned>(i));
            sum += (i % 2 == 1 ? c : -c) * std::exp(-e);
        }
        return std::clamp(sum, 0.0, 1.0);
    }

    PointCoverage point_coverage(double x, double d_a, double threshold, const EstimationModel &est,
                                 const ErrorOverrides &ov)
    {
        const NetworkConfig &net = est.net();
        const double gb = est.gain_b(d_a);
        const double g = net.sidelobe_gain();
        PointCoverage p;
        p.t0 = branch_coverage(x, threshold, gb * est.gain_u(), net);
        p.t_ma = branch_coverage(x, threshold, gb * g, net);
        p.t_bs = branch_coverage(x, threshold, g * g, net);
        p.p_ma = ov.p_ma ? *ov.p_ma : p_misalignment(est.sigma_psi2(x, d_a), est.nu());
        return p;
    }

    CoverageResult coverage_in_cell(const CoverageQuery &query, double d_a, const Config &cfg,
                                    const ErrorOverrides &ov)
    {
        check_query(query);
        if (!(d_a > 0.0))
            throw DomainError("coverage_in_cell: cell size must be positive");
        const auto est = EstimationModel::for_beta(cfg, query.k, query.theta_u, query.beta);
        return finish(cell_breakdown(query, d_a, est, ov), "coverage_in_cell");
    }

    CoverageResult coverage_probability(const CoverageQuery &query, const Config &cfg, const ErrorOverrides &ov)
    {
        check_query(query);
        const auto est = EstimationModel::for_beta(cfg, query.k, query.theta_u, query.beta);
        BranchBreakdown acc;
        for (const QuadNode &n : cell_size_rule(query.k, cfg.net))
        {
            const BranchBreakdown b = cell_breakdown(query, n.x, est, ov);
            acc.t0 += n.w * b.t0;
            acc.t_ma += n.w * b.t_ma;
            acc.t_bs += n.w * b.t_bs;
        }
        return finish(acc, "coverage_probability");
    }

    CoverageResult coverage_probability_exhaustive(const CoverageQuery &query, const Config &cfg)
    {
        return coverage_probability(query, cfg, ErrorOverrides{0.0, 0.0});
    }

    double overall_coverage(double threshold, int k, Radians theta_u, double beta, const Config &cfg)
    {
        return coverage_probability({threshold, 0, k, theta_u, beta}, cfg).probability;
    }

    double rate_threshold(double r0, double beta, const NetworkConfig &net)
    {
        if (!(r0 >= 0.0))
            throw DomainError("rate_threshold: r0 must be >= 0");
        if (!(beta > 0.0 && beta <= 1.0))
            throw DomainError("rate_threshold: beta must be in (0, 1]");
        const double e = r0 * (net.t_init + net.t_frame) / (beta * net.t_frame * net.bandwidth);
        if (!(e < 1023.0))
            return kInf;
        return std::expm1(e * std::log(2.0));
    }

    double rate_coverage(double r0, double beta, int k, Radians theta_u, const Config &cfg)
    {
        if (!(r0 > 0.0))
            throw DomainError("rate_coverage: r0 must be positive");
        const double t = rate_threshold(r0, beta, cfg.net);
        if (!std::isfinite(t))
            return 0.0;
        return overall_coverage(t, k, theta_u, beta, cfg);
    }

    std::vector<std::string> coverage_csv_header()
    {
        return {"lambda", "k", "j", "theta_u", "beta", "threshold", "probability", "method", "stderr"};
    }

    void write_coverage_row(CsvWriter &w, double lambda, const CoverageQuery &q, const CoverageResult &r)
    {
        w.row() << lambda << q.k << q.j << q.theta_u.value() << q.beta << q.threshold << r.probability
                << to_string(r.method) << r.std_error;
    }
}
