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

#ifndef bpjee_harness_H
#define bpjee_harness_H

#include "bpjee/channel.hpp"
#include "bpjee/linkcap.hpp"
#include "bpjee/modeswitch.hpp"
#include "bpjee/powermodel.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpjee
{
    struct SystemSize
    {
        std::size_t m = 6; // BS antennas
        std::size_t n = 2; // antennas per user
        std::size_t k = 3; // users in the cell
    };

    // Every field has a default, so an empty config file reproduces the reference setup
    struct RunConfig
    {
        Scenario scenario;
        PowerModel power;
        SystemSize system;
        CatalogSource catalog_source = CatalogSource::standard;
        std::vector<std::string> mode_labels; // used when catalog_source is user_supplied
        std::size_t trials = 1000;
        std::uint64_t seed = 1;
        Estimator estimator = Estimator::upper;
        unsigned threads = 0; // 0: hardware concurrency
        std::vector<double> speeds_kmh = {3.0, 30.0, 120.0};
        std::vector<double> distances_km = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};

        void validate() const;
        ModeCatalog catalog() const;
    };

    // Sets one dotted key (scenario.speed_kmh, power.eta, run.trials, ...); throws
    // std::invalid_argument for unknown keys or malformed values
    void apply_setting(RunConfig &cfg, std::string_view key, std::string_view value);

    // Line-oriented `key = value`; blank lines and lines starting with '#' are ignored
    RunConfig parse_config(std::istream &in, RunConfig base = {});
    RunConfig load_config(const std::filesystem::path &path, RunConfig base = {});

    struct SweepRow
    {
        double speed_kmh = 0.0;
        std::string mode;
        Estimator estimator = Estimator::upper;
        double mean_xi_bpj = 0.0;
        double se_xi_bpj = 0.0;
        double mean_p_t_w = 0.0;
        double mean_capacity_bps = 0.0;
        std::size_t trials = 0;
        std::string status; // "ok" or "infeasible"
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows; // speed-major, then mode, then estimator
    };

    // Mean over cfg.trials channel draws of the realized xi at the P_t* solved on the estimator.
    // Trial t uses seed trial_seed(cfg.seed, t) at every speed, so speeds share channel draws.
    SweepResult run_speed_sweep(const RunConfig &cfg, std::span<const double> speeds_kmh, double distance_km,
                                std::span<const Mode> modes);

    // As run_speed_sweep for each of zhang, lower, upper and optimal
    SweepResult run_estimator_comparison(const RunConfig &cfg, std::span<const double> speeds_kmh,
                                         double distance_km, std::span<const Mode> modes);

    // General form behind both sweeps
    SweepResult run_sweep(const RunConfig &cfg, std::span<const double> speeds_kmh, double distance_km,
                          std::span<const Mode> modes, std::span<const Estimator> estimators);

    // Columns: speed_kmh,mode,estimator,mean_xi_bpj,se_xi_bpj,mean_p_t_w,mean_capacity_bps,trials,status
    void write_sweep_csv(std::ostream &out, const SweepResult &result);

    // Lookup table over speeds x distances (speed-major)
    std::vector<LookupEntry> run_mode_map(const RunConfig &cfg, std::span<const double> speeds_kmh,
                                          std::span<const double> distances_km);

    // SVG line chart of mean xi over speed, one series per (mode, estimator). Throws
    // precondition_error when no row is feasible and io_error when the file cannot be written.
    void emit_plot(const SweepResult &result, const std::filesystem::path &path);

    // Floating-point text form used in every CSV: 9 significant digits
    std::string format_real(double value);
}

#endif
