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

#ifndef bpjee_numerics_H
#define bpjee_numerics_H

#include <functional>

namespace bpjee
{
    // Zeroth-order Bessel function of the first kind.
    // Rational approximation for |x| < 8, Hankel asymptotic form beyond; absolute error below 1e-8.
    double bessel_j0(double x);

    // Central difference with step h = 1e-6 * max(1, x); one-sided forward step when x < h so that
    // functions defined only on [0, inf) are never evaluated at negative arguments.
    double central_difference(const std::function<double(double)> &f, double x);

    // A nonnegative, strictly concave, increasing function on [0, inf) with its first derivative.
    // When `deriv` is empty the derivative falls back to central_difference().
    struct ConcaveFn
    {
        std::function<double(double)> eval;
        std::function<double(double)> deriv;

        double operator()(double x) const { return eval(x); }
        double slope(double x) const;
    };

    struct SolverConfig
    {
        double rel_tol = 1e-10;   // |psi(x*)| <= rel_tol * f(x*)
        int max_iters = 100;
        double bracket_hi = 1e6;  // initial upper bracket, doubled up to 60 times

        void validate() const;
    };

    struct RatioOptimum
    {
        double x_star = 0.0;
        double ratio_star = 0.0;
    };

    // Samples f on x = 0 and a 64-point log grid over [1e-9 * hi, hi] and throws precondition_error
    // unless the samples are finite, f(0) >= 0, increasing and with nonincreasing chord slopes.
    void check_concave_increasing(const ConcaveFn &f, double hi);

    // Maximizes f(x) / (a x + b) over x >= 0 for concave increasing f and a, b > 0.
    //
    // The optimum is the unique root of psi(x) = f(x) - f'(x) (x + b/a), i.e. the fixed point
    // x* = f(x*)/f'(x*) - b/a. psi is increasing for concave f, so the root is bracketed first
    // (doubling `bracket_hi` up to 60 times) and then polished by Newton steps that fall back to
    // bisection whenever a step leaves the bracket or converges too slowly. If psi(0) >= 0 the
    // optimum sits on the boundary and x* = 0 is returned.
    //
    // Throws precondition_error when the concavity screen fails and no_optimum_error when psi
    // never changes sign (the ratio keeps increasing over the whole searched range).
    RatioOptimum maximize_ratio(const ConcaveFn &f, double a, double b, const SolverConfig &cfg = {});

    // Derivative-free global search of max(f, 0) / (a x + b) over {0} and a log grid on [lo, hi],
    // refined by golden-section search around the best grid point. Used for numerators that are
    // not concave (difference-of-bounds estimators).
    RatioOptimum maximize_ratio_scan(const std::function<double(double)> &f, double a, double b,
                                     double lo, double hi, int points = 400);
}

#endif
