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

#include "bpjee/optimizer.hpp"
#include "bpjee/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bpjee
{
    double optimal_bandwidth_fixed_pt(const ConcaveFn &r_of_w, double p_t, std::size_t m_a, const PowerModel &pm,
                                      double w_max)
    {
        pm.validate();
        if (!(w_max > 0.0) || !std::isfinite(w_max))
            throw domain_error("optimal_bandwidth_fixed_pt: w_max must be positive and finite");
        if (!(p_t >= 0.0))
            throw domain_error("optimal_bandwidth_fixed_pt: transmit power must be nonnegative");
        if (m_a < 1)
            throw domain_error("optimal_bandwidth_fixed_pt: at least one active antenna required");

        const double a = double(m_a) * pm.p_sp_bw_w_per_hz + pm.p_ac_bw_w_per_hz;
        const double b = p_t / pm.eta + pm.p_sta_w + double(m_a) * pm.p_cir_w;

        // psi(W_max) <= 0 means the ratio is still increasing at W_max
        if (r_of_w(w_max) - r_of_w.slope(w_max) * (w_max + b / a) <= 0.0)
            return w_max;

        // Capacities are undefined at W = 0; their limit there is 0
        const double w_floor = 1e-12 * w_max;
        ConcaveFn extended{[&](double w) { return w > 0.0 ? r_of_w(w) : 0.0; },
                           [&](double w) { return r_of_w.slope(std::max(w, w_floor)); }};
        SolverConfig cfg;
        cfg.bracket_hi = w_max;
        return std::min(maximize_ratio(extended, a, b, cfg).x_star, w_max);
    }

    double optimal_power_fixed_pt(const ConcaveFn &r_of_pt, double w, std::size_t m_a, const PowerModel &pm)
    {
        pm.validate();
        if (!(w > 0.0))
            throw domain_error("optimal_power_fixed_pt: bandwidth must be positive");
        const double a = 1.0 / pm.eta;
        const double b = pm.p_sta_w + dynamic_power(pm, m_a, w);

        SolverConfig cfg;
        cfg.bracket_hi = power_bracket_w;
        try
        {
            return maximize_ratio(r_of_pt, a, b, cfg).x_star;
        }
        catch (const precondition_error &)
        {
            return maximize_ratio_scan(r_of_pt.eval, a, b, 1e-6, power_bracket_w).x_star;
        }
    }

    OperatingPoint make_operating_point(std::size_t m_a, double w, double p_t, double capacity, const PowerModel &pm)
    {
        OperatingPoint op;
        op.w_hz = w;
        op.p_t_w = p_t;
        op.capacity_bps = std::max(capacity, 0.0);
        op.total_power_w = total_power(pm, p_t, m_a, w);
        op.xi_bpj = op.capacity_bps / op.total_power_w;
        return op;
    }

    OperatingPoint solve_operating_point(const Mode &mode, const ConcaveFn &capacity_fn, const PowerModel &pm,
                                         const Scenario &scenario)
    {
        scenario.validate();
        const double w = scenario.w_max_hz;
        const double p_t = optimal_power_fixed_pt(capacity_fn, w, mode.m_a, pm);
        return make_operating_point(mode.m_a, w, p_t, capacity_fn(p_t), pm);
    }
}
