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

// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.

#include "beamloc/antenna.hpp"
#include "beamloc/coverage.hpp"
#include "beamloc/dictionary.hpp"
#include "beamloc/initial_access.hpp"
#include "beamloc/localization.hpp"
#include "beamloc/montecarlo.hpp"
#include "beamloc/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace beamloc;

namespace
{
    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    Config at_lambda(double lambda)
    {
        Config c;
        c.net.lambda = lambda;
        c.finalize();
        return c;
    }

    std::string fmt(const char *f, auto... a)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a...);
        return buf;
    }

    // interior local maximum: some 1 < i < n with v[i-1] < v[i] > v[i+1]
    bool has_interior_max(const std::vector<double> &v)
    {
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            if (v[i] > v[i - 1] && v[i] > v[i + 1])
                return true;
        return false;
    }

    bool monotone(const std::vector<double> &v)
    {
        return std::is_sorted(v.begin(), v.end()) || std::is_sorted(v.rbegin(), v.rend());
    }

    Verdict ac1()
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        int bad = 0;
        std::uint64_t seed = 100;
        for (double lam : {0.005, 0.02, 0.1})
            for (int k : {4, 16})
                for (double beta : {0.5, 0.9})
                {
                    const Config c = at_lambda(lam);
                    CoverageQuery q;
                    q.threshold = db_to_linear(5.0);
                    q.k = k;
                    q.beta = beta;
                    q.theta_u = optimizer_theta_u(k, c);
                    const double an = coverage_probability(q, c).probability;
                    const auto mc = simulate_coverage(q, c, McSettings{100000, ++seed, 0, 0.0});
                    const double diff = std::abs(an - mc.probability);
                    const double tol = std::max(0.02, 3.0 * mc.std_error);
                    worst = std::max(worst, diff / tol);
                    if (diff > tol)
                    {
                        ++bad;
                        std::cout << fmt("  AC1 miss: lambda %g k %d beta %g analytical %.4f mc %.4f\n", lam, k,
                                         beta, an, mc.probability);
                    }
                }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {bad == 0, fmt("12 points, %d outside tolerance, worst |diff|/tol %.3f, %.1f s", bad, worst, secs)};
    }

    Verdict ac2()
    {
        const Config c;
        bool ok = true;
        std::ostringstream d;
        for (int k : {2, 8, 32})
        {
            const Radians tu = optimizer_theta_u(k, c);
            const double bs = avg_beam_selection_error(k, c.beta, tu, c);
            const double ma = avg_misalignment_error(k, tu, c.beta, c);
            const auto e = simulate_error_probabilities(k, c.beta, tu, c, McSettings{1000000, 7u + k, 0, 0.0});
            const bool kb = std::abs(bs - e.p_bs) <= 3.0 * e.se_bs && std::abs(ma - e.p_ma) <= 3.0 * e.se_ma;
            ok = ok && kb;
            d << fmt("k=%d P_BS %.3g/%.3g P_MA %.4f/%.4f%s; ", k, bs, e.p_bs, ma, e.p_ma, kb ? "" : " MISS");
        }
        return {ok, d.str() + "analytical/simulated"};
    }

    Verdict ac3()
    {
        const Config c;
        std::vector<double> bs, ma;
        for (int k = 1; k <= 32; ++k)
        {
            const Radians tu = optimizer_theta_u(k, c);
            bs.push_back(avg_beam_selection_error(k, c.beta, tu, c));
            ma.push_back(avg_misalignment_error(k, tu, c.beta, c));
        }
        const bool min1 = std::all_of(bs.begin() + 1, bs.end(), [&](double v) { return bs[0] <= v; });
        const bool ok = !monotone(bs) && !monotone(ma) && has_interior_max(bs) && has_interior_max(ma) && min1;
        return {ok, fmt("P_BS(1) %.3g min %s, P_BS interior max %s, P_MA interior max %s", bs[0],
                        min1 ? "yes" : "no", has_interior_max(bs) ? "yes" : "no",
                        has_interior_max(ma) ? "yes" : "no")};
    }

    Verdict ac4()
    {
        bool order = true;
        double best = 0.0;
        std::ostringstream d;
        for (int i = 0; i < 12; ++i)
        {
            const double lam = 0.005 * std::pow(0.2 / 0.005, i / 11.0);
            Config c = at_lambda(lam);
            c.access.delta_d = 0.1;
            const auto t = run_initial_access(c.access, c);
            const Seconds sym(c.access.symbol_duration);
            const double theta_b = std::atan(t.d_a / c.net.h_b) / t.final_k();
            const double it = delay_iterative(t.final_k(), Radians(t.final_theta_u()), sym).value();
            const double ex = delay_exhaustive(Radians(theta_b), Radians(t.final_theta_u()), sym).value();
            const double pr = t.total_delay.value();
            best = std::max(best, 1.0 - pr / ex);
            if (!(pr < it && it < ex))
            {
                order = false;
                d << fmt("ordering broken at lambda %.4g (proposed %.4g ms, iterative %.4g ms, exhaustive %.4g ms); ",
                         lam, pr * 1e3, it * 1e3, ex * 1e3);
            }
        }
        d << fmt("max reduction vs exhaustive %.1f%%", 100.0 * best);
        return {order && best >= 0.7, d.str()};
    }

    Verdict ac5()
    {
        Config c = at_lambda(0.01);
        c.access.delta_d = 0.01;
        const auto fine = run_initial_access(c.access, c);
        c.access.delta_d = 0.1;
        const auto coarse = run_initial_access(c.access, c);
        const auto nf = static_cast<long>(fine.steps.size());
        const auto nc = static_cast<long>(coarse.steps.size());
        const bool ok = std::abs(nf - 20) <= 6 && std::abs(nc - 3) <= 1 &&
                        fine.terminated == Termination::accuracy_met &&
                        coarse.terminated == Termination::accuracy_met;
        return {ok, fmt("delta_d 0.01: %ld steps, delta_d 0.1: %ld steps", nf, nc)};
    }

    Verdict ac6()
    {
        Config c = at_lambda(0.01);
        c.opt.eps_bs = 1.0;
        c.opt.eps_ma = 1.0;
        c.mc.threads = 0;
        const auto grid = beta_grid(c.opt.beta_step);
        const auto r4 = optimize_beta(4, c);
        const auto r16 = optimize_beta(16, c);
        auto interior = [&](double b) { return b > grid.front() && b < grid.back(); };
        const bool ok = interior(r4.beta_star) && interior(r16.beta_star) && r16.beta_star <= r4.beta_star;
        return {ok, fmt("beta*(4) %.2f, beta*(16) %.2f", r4.beta_star, r16.beta_star)};
    }

    Verdict ac7()
    {
        auto run = [](double noise_dbw) {
            Config c = at_lambda(0.1);
            c.loc.est_noise = dbw_to_watts(noise_dbw);
            c.mc.threads = 0;
            return optimize_beamwidth(c);
        };
        const auto lo = run(-50.0);
        const auto hi = run(-20.0);
        const bool ok = lo.feasible && hi.feasible && lo.beta_star >= 0.8 && hi.k_star <= lo.k_star;
        return {ok, fmt("-50 dBW: k* %d beta* %.2f; -20 dBW: k* %d beta* %.2f", lo.k_star, lo.beta_star, hi.k_star,
                        hi.beta_star)};
    }

    Verdict ac8()
    {
        std::vector<std::string> failed;
        auto check = [&](const char *name, bool ok) {
            if (!ok)
                failed.emplace_back(name);
        };
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);

        bool tiling = true, gain = true, deriv = true, order = true;
        for (int i = 0; i < 200; ++i)
        {
            const double d_a = 1.0 + 999.0 * u(rng), h = 1.0 + 40.0 * u(rng);
            const int k = 1 + static_cast<int>(63.0 * u(rng));
            const auto b = beam_boundaries(d_a, h, k);
            tiling = tiling && b.front() == 0.0 && std::abs(b.back() - d_a) <= 1e-9 * d_a;
            for (int j = 1; j <= k; ++j)
                tiling = tiling && std::abs(std::atan(b[j] / h) - j * std::atan(d_a / h) / k) <= 1e-12;

            const double th = 1e-3 + (kTwoPi - 1e-3) * u(rng), eps = 0.5 * u(rng);
            const SectorizedPattern p(Radians(th), 31.6, eps);
            gain = gain && std::abs(p.main_gain() * th + p.side_gain() * (kTwoPi - th) - kTwoPi * 31.6) <=
                               1e-10 * kTwoPi * 31.6;

            const auto arr = UlaArray::half_wavelength(2 + i % 31, 28e9);
            const double a = -1.4 + 2.8 * u(rng), step = 1e-6;
            const auto dv = array_response_derivative(arr, Radians(a));
            const auto pv = array_response(arr, Radians(a + step));
            const auto nv = array_response(arr, Radians(a - step));
            for (std::size_t e = 0; e < dv.size(); ++e)
                deriv = deriv && std::abs(dv[e] - (pv[e] - nv[e]) / (2.0 * step)) < 1e-6 * arr.m();

            const NetworkConfig net = Config().net;
            const double x = 200.0 * u(rng), t = db_to_linear(-10.0 + 30.0 * u(rng));
            const double gb = main_lobe_gain(std::atan(400.0 / net.h_b) / (1 + i % 32), net);
            const double gu = main_lobe_gain(kPi / 8.0, net), g = net.sidelobe_gain();
            const double c0 = branch_coverage(x, t, gb * gu, net), c1 = branch_coverage(x, t, gb * g, net),
                         c2 = branch_coverage(x, t, g * g, net);
            order = order && c0 >= c1 - 1e-12 && c1 >= c2 - 1e-12;
        }
        check("tiling", tiling);
        check("gain conservation", gain);
        check("derivative", deriv);
        check("branch ordering", order);

        Config c = at_lambda(0.02);
        CoverageQuery q;
        q.threshold = db_to_linear(5.0);
        q.k = 8;
        q.theta_u = Radians(kPi / 8.0);
        check("thread determinism", simulate_coverage(q, c, McSettings{20000, 9, 1, 0.0}).probability ==
                                        simulate_coverage(q, c, McSettings{20000, 9, 4, 0.0}).probability);

        Config o;
        o.opt.beta_step = 0.25;
        o.finalize();
        const Radians tu = optimizer_theta_u(6, o);
        std::vector<std::pair<double, double>> errs;
        for (double b : beta_grid(o.opt.beta_step))
            errs.emplace_back(avg_beam_selection_error(6, b, tu, o), avg_misalignment_error(6, tu, b, o));
        int prev = -1;
        bool mono = true;
        for (double cap : {1e-4, 1e-3, 1e-2, 0.1, 1.0})
        {
            int n = 0;
            for (const auto &[pb, pm] : errs)
                n += (pb <= cap && pm <= cap) ? 1 : 0;
            mono = mono && n >= prev;
            prev = n;
        }
        check("feasible-set monotonicity", mono);

        Config s = o;
        s.net.p_t *= 10.0;
        s.net.noise_psd *= 10.0;
        s.loc.est_noise *= 10.0;
        const auto ra = optimize_beta(12, o);
        const auto rs = optimize_beta(12, s);
        check("argmax invariance", ra.beta_star == rs.beta_star &&
                                       std::abs(ra.objective - rs.objective) <= 1e-9 * std::max(1e-300, ra.objective));

        std::string d = failed.empty() ? "all 7 property groups hold" : "failed:";
        for (const auto &f : failed)
            d += " " + f;
        return {failed.empty(), d};
    }
}

int main()
{
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"AC1 analytical vs simulated coverage", ac1}, {"AC2 error-probability oracle", ac2},
        {"AC3 error curves over k", ac3},              {"AC4 access delay ordering", ac4},
        {"AC5 access step counts", ac5},                {"AC6 rate vs beta maximizer", ac6},
        {"AC7 optimum vs estimation noise", ac7},       {"AC8 property suites", ac8}};
    int failures = 0;
    for (const auto &[name, fn] : criteria)
    {
        Verdict v;
        try
        {
            v = fn();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    }
    std::cout << (8 - failures) << "/8 criteria pass" << std::endl;
    return failures;
}
