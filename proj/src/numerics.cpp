// SPDX-License-Identifier: Apache-2.0
//
// bpjee: energy-efficient multimode transmission for downlink MIMO
// Copyright (C) 2026 The bpjee authors
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

#include "bpjee/numerics.hpp"
#include "bpjee/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace bpjee
{
    double bessel_j0(double x)
    {
        if (!std::isfinite(x))
            throw domain_error("bessel_j0: argument must be finite");

        const double ax = std::abs(x);
        if (ax < 8.0)
        {
            const double y = x * x;
            // Both polynomials are divided by their constant terms so that J0(0) is exactly 1
            const double num = 57568490574.0 + y * (-13362590354.0 + y * (651619640.7 + y * (-11214424.18 + y * (77392.33017 + y * (-184.9052456)))));
            const double den = 57568490411.0 + y * (1029532985.0 + y * (9494680.718 + y * (59272.64853 + y * (267.8532712 + y * 1.0))));
            return (num / 57568490574.0) / (den / 57568490411.0);
        }

        const double z = 8.0 / ax;
        const double y = z * z;
        const double phase = ax - 0.25 * std::numbers::pi;
        const double p0 = 1.0 + y * (-0.1098628627e-2 + y * (0.2734510407e-4 + y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
        const double q0 = -0.1562499995e-1 + y * (0.1430488765e-3 + y * (-0.6911147651e-5 + y * (0.7621095161e-6 - y * 0.934935152e-7)));
        return std::sqrt(2.0 / (std::numbers::pi * ax)) * (std::cos(phase) * p0 - z * std::sin(phase) * q0);
    }

    double central_difference(const std::function<double(double)> &f, double x)
    {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        if (x < h)
            return (f(x + h) - f(x)) / h;
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }

    double ConcaveFn::slope(double x) const
    {
        if (deriv)
            return deriv(x);
        return central_difference(eval, x);
    }

    void SolverConfig::validate() const
    {
        if (!(rel_tol > 0.0))
            throw precondition_error("SolverConfig: rel_tol must be positive");
        if (max_iters < 1)
            throw precondition_error("SolverConfig: max_iters must be at least 1");
        if (!(bracket_hi > 0.0) || !std::isfinite(bracket_hi))
            throw precondition_error("SolverConfig: bracket_hi must be positive and finite");
    }

    void check_concave_increasing(const ConcaveFn &f, double hi)
    {
        constexpr int n_grid = 64;
        constexpr double eps = std::numeric_limits<double>::epsilon();

        const double f0 = f(0.0);
        if (!std::isfinite(f0) || f0 < 0.0)
            throw precondition_error("concavity screen: f(0) must be finite and nonnegative");

        const double lo = hi * 1e-9;
        std::vector<double> xs(n_grid), fs(n_grid);
        for (int i = 0; i < n_grid; ++i)
        {
            xs[i] = lo * std::pow(hi / lo, double(i) / double(n_grid - 1));
            fs[i] = f(xs[i]);
            if (!std::isfinite(fs[i]))
                throw precondition_error("concavity screen: f is not finite on the sample grid");
        }

        // Rounding noise floor of a chord slope between neighbours i and i+1
        auto noise = [&](int i)
        { return 16.0 * eps * (std::abs(fs[i]) + std::abs(fs[i + 1])) / (xs[i + 1] - xs[i]); };

        std::vector<double> slopes(n_grid - 1);
        for (int i = 0; i + 1 < n_grid; ++i)
        {
            slopes[i] = (fs[i + 1] - fs[i]) / (xs[i + 1] - xs[i]);
            if (slopes[i] < -noise(i))
                throw precondition_error("concavity screen: f is not increasing");
        }
        if (!(fs.back() > fs.front()))
            throw precondition_error("concavity screen: f is not increasing");

        for (int i = 0; i + 2 < n_grid; ++i)
        {
            const double tol = 1e-9 * std::abs(slopes[i]) + noise(i) + noise(i + 1);
            if (slopes[i + 1] > slopes[i] + tol)
                throw precondition_error("concavity screen: f is not concave");
        }
    }

    RatioOptimum maximize_ratio(const ConcaveFn &f, double a, double b, const SolverConfig &cfg)
    {
        if (!(a > 0.0) || !(b > 0.0))
            throw domain_error("maximize_ratio: a and b must be positive");
        if (!f.eval)
            throw precondition_error("maximize_ratio: empty function");
        cfg.validate();
        check_concave_increasing(f, cfg.bracket_hi);

        const double offset = b / a;
        auto psi = [&](double x)
        { return f(x) - f.slope(x) * (x + offset); };
        auto ratio = [&](double x)
        { return f(x) / (a * x + b); };

        if (psi(0.0) >= 0.0)
            return {0.0, ratio(0.0)};

        double lo = 0.0, hi = cfg.bracket_hi;
        int doublings = 0;
        while (psi(hi) <= 0.0)
        {
            if (++doublings > 60)
                throw no_optimum_error("maximize_ratio: no sign change of the stationarity condition; ratio is monotone on the searched range");
            lo = hi;
            hi *= 2.0;
        }

        // Safeguarded Newton on psi, psi'(x) = -f''(x) (x + b/a)
        auto dpsi = [&](double x)
        {
            const double h = 1e-4 * std::max(x, 1e-12 * cfg.bracket_hi);
            const double d2 = (x < h) ? (f.slope(x + h) - f.slope(x)) / h
                                      : (f.slope(x + h) - f.slope(x - h)) / (2.0 * h);
            return -d2 * (x + offset);
        };

        double x = 0.5 * (lo + hi);
        double step_old = hi - lo, step = step_old;
        for (int iter = 0; iter < cfg.max_iters; ++iter)
        {
            const double p = psi(x);
            const double fx = f(x);
            if (std::abs(p) <= cfg.rel_tol * std::abs(fx))
                break;
            if (p < 0.0)
                lo = x;
            else
                hi = x;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
                break;

            const double dp = dpsi(x);
            const double x_newton = x - p / dp;
            const bool outside = !std::isfinite(x_newton) || x_newton <= lo || x_newton >= hi;
            const bool slow = std::abs(2.0 * p) > std::abs(step_old * dp);
            step_old = step;
            if (outside || slow)
            {
                step = 0.5 * (hi - lo);
                x = lo + step;
            }
            else
            {
                step = x_newton - x;
                x = x_newton;
            }
        }
        return {x, ratio(x)};
    }

    RatioOptimum maximize_ratio_scan(const std::function<double(double)> &f, double a, double b,
                                     double lo, double hi, int points)
    {
        if (!(a > 0.0) || !(b > 0.0))
            throw domain_error("maximize_ratio_scan: a and b must be positive");
        if (!(lo > 0.0) || !(hi > lo) || points < 3)
            throw domain_error("maximize_ratio_scan: need 0 < lo < hi and at least 3 points");

        auto ratio = [&](double x)
        { return std::max(f(x), 0.0) / (a * x + b); };

        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i)
            xs[i] = lo * std::pow(hi / lo, double(i) / double(points - 1));

        RatioOptimum best{0.0, ratio(0.0)};
        int best_i = -1;
        for (int i = 0; i < points; ++i)
        {
            const double r = ratio(xs[i]);
            if (r > best.ratio_star)
            {
                best = {xs[i], r};
                best_i = i;
            }
        }
        if (best_i < 0)
            return best;

        // Golden-section refinement on the two neighbouring grid cells
        double left = best_i > 0 ? xs[best_i - 1] : 0.0;
        double right = best_i + 1 < points ? xs[best_i + 1] : xs[best_i];
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = right - g * (right - left), d = left + g * (right - left);
        double rc = ratio(c), rd = ratio(d);
        for (int iter = 0; iter < 200 && (right - left) > 1e-12 * std::max(1.0, right); ++iter)
        {
            if (rc > rd)
            {
                right = d, d = c, rd = rc;
                c = right - g * (right - left), rc = ratio(c);
            }
            else
            {
                left = c, c = d, rc = rd;
                d = left + g * (right - left), rd = ratio(d);
            }
        }
        const double x = 0.5 * (left + right);
        const double r = ratio(x);
        if (r > best.ratio_star)
            best = {x, r};
        return best;
    }
}
