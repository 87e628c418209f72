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

#include "beamloc/montecarlo.hpp"

#include "beamloc/antenna.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

namespace beamloc
{
    namespace
    {
        std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
            return std::mt19937_64(seq);
        }

        double fading_draw(std::mt19937_64 &rng, int n)
        {
            std::gamma_distribution<double> g(n, 1.0 / n);
            return g(rng);
        }

        // Sum of sidelobe interference from a PPP on |y| in (x, x + reach], both sides
        double interference(std::mt19937_64 &rng, double x, double reach, double gain, const NetworkConfig &net)
        {
            std::poisson_distribution<long> count(net.lambda * reach);
            std::uniform_real_distribution<double> pos(x, x + reach);
            const double h2 = net.h_b * net.h_b;
            double sum = 0.0;
            for (int side = 0; side < 2; ++side)
            {
                const long n = count(rng);
                for (long i = 0; i < n; ++i)
                {
                    const double y = pos(rng);
                    const LinkState st = link_state(Meters(y), net);
                    const double att = distance_attenuation(y * y + h2, path_exponent(st, net));
                    sum += net.k_pl * net.p_t * gain * att * fading_draw(rng, nakagami_shape(st, net));
                }
            }
            return sum;
        }

        double reach_of(const McSettings &mc, const NetworkConfig &net)
        {
            const double w = mc.window > 0.0 ? mc.window : default_window(net);
            if (w < 10.0 / net.lambda)
                std::clog << "beamloc: window " << w << " m is below 10/lambda, interference is truncated\n";
            return w;
        }

        double stderr_of(double p, std::uint64_t n)
        {
            return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
        }

        // Compensated sum in block order
        double ordered_sum(const std::vector<double> &v)
        {
            double s = 0.0;
            double c = 0.0;
            for (double x : v)
            {
                const double y = x - c;
                const double t = s + y;
                c = (t - s) - y;
                s = t;
            }
            return s;
        }

        template <class T>
        T total(const std::vector<T> &v)
        {
            T s{};
            for (const T &x : v)
                s += x;
            return s;
        }

        // Distance estimate clamped into the cell; an infinite spread lands on an edge
        double clamped_estimate(std::mt19937_64 &rng, double x, double sigma, double d_a)
        {
            std::normal_distribution<double> z;
            const double e = z(rng);
            if (!std::isfinite(sigma))
                return e < 0.0 ? 0.0 : d_a;
            return std::clamp(x + sigma * e, 0.0, d_a);
        }

        bool misaligned(std::mt19937_64 &rng, double sigma_psi, double nu)
        {
            std::normal_distribution<double> z;
            const double e = z(rng);
            if (!std::isfinite(sigma_psi))
                return true;
            return std::abs(sigma_psi * e) > nu;
        }
    }

    double default_window(const NetworkConfig &net)
    {
        return std::max(10.0 / net.lambda, net.d_s + 500.0);
    }

    Realization sample_deployment(const NetworkConfig &net, std::uint64_t seed, double window)
    {
        Realization r;
        r.seed = seed;
        r.window = window > 0.0 ? window : default_window(net);
        std::mt19937_64 rng = block_rng(seed, 0);
        std::poisson_distribution<long> count(2.0 * net.lambda * r.window);
        std::uniform_real_distribution<double> pos(-r.window, r.window);
        const long n = count(rng);
        if (n == 0)
            throw DomainError("sample_deployment: empty window");
        for (long i = 0; i < n; ++i)
            r.bs_positions.push_back(pos(rng));
        std::sort(r.bs_positions.begin(), r.bs_positions.end());
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.bs_positions.size(); ++i)
            if (std::abs(r.bs_positions[i]) < std::abs(r.bs_positions[best]))
                best = i;
        r.serving_index = best;
        const double d = std::abs(r.bs_positions[best]);
        // user faces its serving BS
        r.user = UserGeometry(Meters(d), Radians(0.0), Meters(net.h_b));
        for (double y : r.bs_positions)
            r.fading.push_back(fading_draw(rng, nakagami_shape(link_state(Meters(std::abs(y)), net), net)));
        return r;
    }

    McSettings mc_settings(const Config &cfg)
    {
        McSettings s;
        s.trials = cfg.mc.trials;
        s.seed = cfg.mc.seed;
        s.threads = cfg.mc.threads;
        return s;
    }

    void for_each_block(const McSettings &mc,
                        const std::function<void(std::uint64_t, std::mt19937_64 &, std::uint64_t)> &fn)
    {
        if (mc.trials < 1)
            throw DomainError("montecarlo: trials must be >= 1");
        const std::uint64_t blocks = (mc.trials + kMcBlock - 1) / kMcBlock;
        unsigned workers = mc.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : mc.threads;
        workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
        std::atomic<std::uint64_t> next{0};
        auto work = [&]() {
            for (std::uint64_t b = next++; b < blocks; b = next++)
            {
                std::mt19937_64 rng = block_rng(mc.seed, b);
                const std::uint64_t n = std::min(kMcBlock, mc.trials - b * kMcBlock);
                fn(b, rng, n);
            }
        };
        if (workers <= 1)
        {
            work();
            return;
        }
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(work);
    }

    CoverageResult simulate_coverage(const CoverageQuery &query, const Config &cfg, const McSettings &mc,
                                     const ErrorOverrides &ov)
    {
        if (query.k < 1 || query.j < 0 || query.j > query.k)
            throw DomainError("simulate_coverage: beam index out of range");
        const NetworkConfig &net = cfg.net;
        const auto est = EstimationModel::for_beta(cfg, query.k, query.theta_u, query.beta);
        const double reach = reach_of(mc, net);
        const double g = net.sidelobe_gain();
        const std::uint64_t blocks = (mc.trials + kMcBlock - 1) / kMcBlock;
        struct Counts
        {
            std::uint64_t t0 = 0, t_ma = 0, t_bs = 0;
            Counts &operator+=(const Counts &o)
            {
                t0 += o.t0;
                t_ma += o.t_ma;
                t_bs += o.t_bs;
                return *this;
            }
        };
        std::vector<Counts> per_block(blocks);

        for_each_block(mc, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t n) {
            std::exponential_distribution<double> cell(2.0 * net.lambda);
            std::uniform_real_distribution<double> unit;
            Counts c;
            for (std::uint64_t t = 0; t < n; ++t)
            {
                const double d_a = cell(rng);
                const auto bounds = beam_boundaries(d_a, net.h_b, query.k);
                double x;
                if (query.j == 0)
                    x = d_a * unit(rng);
                else
                {
                    const double lo = bounds[static_cast<std::size_t>(query.j) - 1];
                    const double hi = bounds[static_cast<std::size_t>(query.j)];
                    x = lo + (hi - lo) * unit(rng);
                }
                const int j_true = locate_beam(bounds, x);

                bool bs_err;
                if (ov.p_bs)
                    bs_err = unit(rng) < *ov.p_bs;
                else
                {
                    const double d_hat = clamped_estimate(rng, x, std::sqrt(est.sigma_d2(x, d_a)), d_a);
                    bs_err = locate_beam(bounds, d_hat) != j_true;
                }
                bool ma_err;
                if (ov.p_ma)
                    ma_err = unit(rng) < *ov.p_ma;
                else
                    ma_err = misaligned(rng, std::sqrt(est.sigma_psi2(x, d_a)), est.nu());

                double gain;
                if (bs_err)
                    gain = g * g;
                else if (ma_err)
                    gain = est.gain_b(d_a) * g;
                else
                    gain = est.gain_b(d_a) * est.gain_u();

                const LinkState st = link_state(Meters(x), net);
                const double s = path_gain(x, net) * gain * fading_draw(rng, nakagami_shape(st, net));
                const double i = interference(rng, x, reach, g * g, net);
                if (s >= query.threshold * (i + net.noise_power()))
                {
                    if (bs_err)
                        ++c.t_bs;
                    else if (ma_err)
                        ++c.t_ma;
                    else
                        ++c.t0;
                }
            }
            per_block[b] = c;
        });

        const Counts c = total(per_block);
        const double n = static_cast<double>(mc.trials);
        CoverageResult r;
        r.method = Method::montecarlo;
        r.breakdown = {c.t0 / n, c.t_ma / n, c.t_bs / n};
        r.probability = static_cast<double>(c.t0 + c.t_ma + c.t_bs) / n;
        r.std_error = stderr_of(r.probability, mc.trials);
        return r;
    }

    ErrorEstimate simulate_error_probabilities(const EstimationModel &model, const McSettings &mc)
    {
        const NetworkConfig &net = model.net();
        const std::uint64_t blocks = (mc.trials + kMcBlock - 1) / kMcBlock;
        std::vector<std::uint64_t> bs(blocks), ma(blocks);
        for_each_block(mc, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t n) {
            std::exponential_distribution<double> cell(2.0 * net.lambda);
            std::uniform_real_distribution<double> unit;
            std::uint64_t nb = 0, nm = 0;
            for (std::uint64_t t = 0; t < n; ++t)
            {
                const double d_a = cell(rng);
                const double x = d_a * unit(rng);
                if (model.k() > 1)
                {
                    const auto bounds = beam_boundaries(d_a, net.h_b, model.k());
                    const double d_hat = clamped_estimate(rng, x, std::sqrt(model.sigma_d2(x, d_a)), d_a);
                    nb += locate_beam(bounds, d_hat) != locate_beam(bounds, x);
                }
                nm += misaligned(rng, std::sqrt(model.sigma_psi2(x, d_a)), model.nu());
            }
            bs[b] = nb;
            ma[b] = nm;
        });
        ErrorEstimate e;
        e.p_bs = static_cast<double>(total(bs)) / static_cast<double>(mc.trials);
        e.p_ma = static_cast<double>(total(ma)) / static_cast<double>(mc.trials);
        e.se_bs = stderr_of(e.p_bs, mc.trials);
        e.se_ma = stderr_of(e.p_ma, mc.trials);
        return e;
    }

    ErrorEstimate simulate_error_probabilities(int k, double beta, Radians theta_u, const Config &cfg,
                                               const McSettings &mc)
    {
        return simulate_error_probabilities(EstimationModel::for_beta(cfg, k, theta_u, beta), mc);
    }

    MeanEstimate simulate_laplace(double serving_d, double s, double gain, const NetworkConfig &net,
                                  const McSettings &mc)
    {
        const double reach = reach_of(mc, net);
        const std::uint64_t blocks = (mc.trials + kMcBlock - 1) / kMcBlock;
        std::vector<double> sum(blocks), sum2(blocks);
        for_each_block(mc, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t n) {
            std::vector<double> v;
            v.reserve(n);
            for (std::uint64_t t = 0; t < n; ++t)
                v.push_back(std::exp(-s * interference(rng, serving_d, reach, gain, net)));
            sum[b] = ordered_sum(v);
            for (double &x : v)
                x *= x;
            sum2[b] = ordered_sum(v);
        });
        const double n = static_cast<double>(mc.trials);
        const double m = ordered_sum(sum) / n;
        const double var = std::max(0.0, ordered_sum(sum2) / n - m * m);
        return {m, std::sqrt(var / n)};
    }
}
