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

#ifndef bpjee_powermodel_H
#define bpjee_powermodel_H

#include <cstddef>

namespace bpjee
{
    // Base-station consumption: P_t / eta + M_a P_cir + p_ac,bw W + M_a p_sp,bw W + P_Sta
    struct PowerModel
    {
        double eta = 0.38;               // power conversion efficiency (PA, feeder, cooling)
        double p_cir_w = 66.4;           // per active antenna circuit power
        double p_sp_bw_w_per_hz = 3.32e-6; // per antenna, per Hz signal processing power
        double p_ac_bw_w_per_hz = 1.82e-6; // per Hz power independent of the antenna count
        double p_sta_w = 36.4;           // static power

        void validate() const;
    };

    // Transmit-power independent part that scales with active antennas and bandwidth
    double dynamic_power(const PowerModel &pm, std::size_t m_a, double w_hz);

    double total_power(const PowerModel &pm, double p_t_w, std::size_t m_a, double w_hz);
}

#endif
