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

#ifndef bpjee_optimizer_H
#define bpjee_optimizer_H

#include "bpjee/channel.hpp"
#include "bpjee/linkcap.hpp"
#include "bpjee/numerics.hpp"
#include "bpjee/powermodel.hpp"

#include <cstddef>

namespace bpjee
{
    struct OperatingPoint
    {
        double w_hz = 0.0;
        double p_t_w = 0.0;
        double capacity_bps = 0.0;
        double total_power_w = 0.0;
        double xi_bpj = 0.0; // capacity_bps / total_power_w
    };

    // P_t search bracket of the power solve, doubled by maximize_ratio when needed
    constexpr double power_bracket_w = 1e4;

    // W* maximizing R(W) / P_total(P_t, M_a, W) at fixed P_t, clamped to w_max.
    // r_of_w must be concave increasing in W.
    double optimal_bandwidth_fixed_pt(const ConcaveFn &r_of_w, double p_t, std::size_t m_a, const PowerModel &pm,
                                      double w_max);

    // P_t* maximizing R(P_t) / P_total(P_t, M_a, W) at fixed W. Numerators that fail the concavity
    // screen (the difference-of-bounds estimators, a capacity stuck at zero) are handled by
    // maximize_ratio_scan over [1e-6, power_bracket_w] W, which returns 0 when the capacity
    // stays nonpositive.
    double optimal_power_fixed_pt(const ConcaveFn &r_of_pt, double w, std::size_t m_a, const PowerModel &pm);

    // Operating point at the given (W, P_t) with capacity clipped at 0
    OperatingPoint make_operating_point(std::size_t m_a, double w, double p_t, double capacity, const PowerModel &pm);

    // W = W_max, P_t from optimal_power_fixed_pt on capacity_fn (a function of P_t bound at W_max)
    OperatingPoint solve_operating_point(const Mode &mode, const ConcaveFn &capacity_fn, const PowerModel &pm,
                                         const Scenario &scenario);
}

#endif
