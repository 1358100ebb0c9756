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

#include "bpjee/powermodel.hpp"
#include "bpjee/errors.hpp"

namespace bpjee
{
    void PowerModel::validate() const
    {
        if (!(eta > 0.0 && eta <= 1.0))
            throw domain_error("PowerModel: eta must lie in (0, 1]");
        if (!(p_cir_w >= 0.0 && p_sp_bw_w_per_hz >= 0.0 && p_ac_bw_w_per_hz >= 0.0 && p_sta_w >= 0.0))
            throw domain_error("PowerModel: power constants must be nonnegative");
    }

    double dynamic_power(const PowerModel &pm, std::size_t m_a, double w_hz)
    {
        if (m_a < 1)
            throw domain_error("dynamic_power: at least one active antenna required");
        if (!(w_hz >= 0.0))
            throw domain_error("dynamic_power: bandwidth must be nonnegative");
        const double antennas = double(m_a);
        return antennas * pm.p_cir_w + pm.p_ac_bw_w_per_hz * w_hz + antennas * pm.p_sp_bw_w_per_hz * w_hz;
    }

    double total_power(const PowerModel &pm, double p_t_w, std::size_t m_a, double w_hz)
    {
        if (!(p_t_w >= 0.0))
            throw domain_error("total_power: transmit power must be nonnegative");
        return p_t_w / pm.eta + dynamic_power(pm, m_a, w_hz) + pm.p_sta_w;
    }
}
