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

#ifndef bpjee_modeswitch_H
#define bpjee_modeswitch_H

#include "bpjee/channel.hpp"
#include "bpjee/ergodic.hpp"
#include "bpjee/linkcap.hpp"
#include "bpjee/optimizer.hpp"
#include "bpjee/powermodel.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpjee
{
    enum class CatalogSource
    {
        standard, // SIMO, SU-MIMO(2,2), (4,2), (6,2), MU-MIMO(4,2,2), (6,2,2), (6,2,3), filtered for feasibility
        exhaustive,    // every SVD mode with M_a in 1..M, every BD mode with K_a in 2..K and M_a in K_a N..M
        user_supplied  // explicit labels, see catalog_from_labels()
    };

    struct ModeCatalog
    {
        std::vector<Mode> modes;
        CatalogSource source = CatalogSource::standard;
    };

    // Transmitter-side capacity used inside the P_t solve of BD modes. SVD modes always use the
    // delayed-channel estimate, except for `optimal`, which solves on the realized capacity.
    enum class Estimator
    {
        zhang,
        lower,
        upper,
        optimal
    };

    std::string to_string(CatalogSource source);
    std::string to_string(Estimator estimator);
    CatalogSource parse_catalog_source(std::string_view text);
    Estimator parse_estimator(std::string_view text);

    // Modes always use all N receive antennas of each active user. Throws precondition_error for
    // user_supplied (use catalog_from_labels) and when the catalog would be empty.
    ModeCatalog enumerate_modes(std::size_t m, std::size_t n, std::size_t k, CatalogSource source);

    // Throws infeasible_mode_error if a labelled mode does not fit the (m, n, k) system
    ModeCatalog catalog_from_labels(std::span<const std::string> labels, std::size_t m, std::size_t n, std::size_t k);

    struct ModeEvaluation
    {
        OperatingPoint solved;   // capacity from the capacity function used in the solve
        OperatingPoint realized; // same (W, P_t), capacity of the current channel with delayed precoders
    };

    // Precoders from the delayed channels, P_t solved at W_max on the chosen estimator
    ModeEvaluation evaluate_mode_instant(const Mode &mode, const ChannelSet &set, const PowerModel &pm,
                                         const Scenario &scenario, Estimator estimator);

    // Link statistics of a homogeneous user at the scenario's speed and the given distance
    LinkStats homogeneous_link_stats(const Scenario &scenario, double distance_km);

    // Ergodic capacity (SVD: ergodic_su, BD: the chosen bound) solved at W_max
    OperatingPoint evaluate_mode_ergodic(const Mode &mode, const Scenario &scenario, const PowerModel &pm,
                                         double distance_km, ErgodicBound bound = ErgodicBound::upper);

    struct SkippedMode
    {
        Mode mode;
        std::string reason;
    };

    struct SwitchDecision
    {
        Mode mode;
        OperatingPoint op;                              // as seen by the transmitter
        OperatingPoint realized_op;                     // instant switching only; equals op for ergodic
        std::vector<std::pair<Mode, double>> per_mode_xi; // feasible modes in catalog order
        std::vector<SkippedMode> skipped;
    };

    // Max-xi mode; ties go to fewer active antennas, then fewer users. Infeasible modes are skipped
    // with a reason; throws infeasible_mode_error only when no mode is feasible.
    SwitchDecision select_mode_instant(const ModeCatalog &catalog, const ChannelSet &set, const PowerModel &pm,
                                       const Scenario &scenario, Estimator estimator);

    // Deterministic: statistics only, no channel draws
    SwitchDecision select_mode_ergodic(const ModeCatalog &catalog, const Scenario &scenario, const PowerModel &pm,
                                       double distance_km, double speed_kmh);

    struct LookupEntry
    {
        double speed_kmh = 0.0;
        double distance_km = 0.0;
        Mode mode;
        OperatingPoint op;
    };

    // One select_mode_ergodic call per (speed, distance) cell, rows in grid order
    std::vector<LookupEntry> build_lookup_table(const ModeCatalog &catalog,
                                                std::span<const std::pair<double, double>> grid,
                                                const PowerModel &pm, const Scenario &scenario);

    // Columns: speed_kmh,distance_km,scheme,m_a,k_a,n_a,p_t_w,xi_bpj
    void write_lookup_csv(std::ostream &out, std::span<const LookupEntry> table);
}

#endif
