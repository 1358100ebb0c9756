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

#include "bpjee/modeswitch.hpp"
#include "bpjee/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <memory>
#include <ostream>

namespace bpjee
{
    namespace
    {
        ConcaveFn profile_in_power(RateProfile profile, double w, double n0)
        {
            auto shared = std::make_shared<const RateProfile>(std::move(profile));
            ConcaveFn fn;
            fn.eval = [shared, w, n0](double p) { return shared->rate(p, w, n0); };
            fn.deriv = [shared, w, n0](double p) { return shared->d_rate_d_power(p, w, n0); };
            return fn;
        }

        bool better(const Mode &a, double xi_a, const Mode &b, double xi_b)
        {
            if (xi_a != xi_b)
                return xi_a > xi_b;
            if (a.m_a != b.m_a)
                return a.m_a < b.m_a;
            return a.k_a < b.k_a;
        }

        // Shared argmax loop; `evaluate` returns (transmitter view, realized view) or throws
        template <typename Evaluate>
        SwitchDecision select(const ModeCatalog &catalog, Evaluate &&evaluate)
        {
            if (catalog.modes.empty())
                throw precondition_error("mode selection: empty catalog");
            SwitchDecision decision;
            bool found = false;
            for (const Mode &mode : catalog.modes)
            {
                std::pair<OperatingPoint, OperatingPoint> ops;
                try
                {
                    ops = evaluate(mode);
                }
                catch (const infeasible_mode_error &e)
                {
                    decision.skipped.push_back({mode, e.what()});
                    continue;
                }
                catch (const no_optimum_error &e)
                {
                    decision.skipped.push_back({mode, e.what()});
                    continue;
                }
                decision.per_mode_xi.emplace_back(mode, ops.first.xi_bpj);
                if (!found || better(mode, ops.first.xi_bpj, decision.mode, decision.op.xi_bpj))
                {
                    decision.mode = mode;
                    decision.op = ops.first;
                    decision.realized_op = ops.second;
                    found = true;
                }
            }
            if (!found)
                throw infeasible_mode_error("mode selection: no feasible mode in the catalog");
            return decision;
        }

        std::string join_counts(const std::vector<std::size_t> &values)
        {
            std::string out;
            for (std::size_t i = 0; i < values.size(); ++i)
                out += (i ? "+" : "") + std::to_string(values[i]);
            return out;
        }
    }

    std::string to_string(CatalogSource source)
    {
        switch (source)
        {
        case CatalogSource::standard:
            return "default";
        case CatalogSource::exhaustive:
            return "exhaustive";
        case CatalogSource::user_supplied:
            return "user";
        }
        return "unknown";
    }

    std::string to_string(Estimator estimator)
    {
        switch (estimator)
        {
        case Estimator::zhang:
            return "zhang";
        case Estimator::lower:
            return "lower";
        case Estimator::upper:
            return "upper";
        case Estimator::optimal:
            return "optimal";
        }
        return "unknown";
    }

    CatalogSource parse_catalog_source(std::string_view text)
    {
        if (text == "default")
            return CatalogSource::standard;
        if (text == "exhaustive")
            return CatalogSource::exhaustive;
        if (text == "user")
            return CatalogSource::user_supplied;
        throw std::invalid_argument("unknown catalog source '" + std::string(text) +
                                    "' (expected default, exhaustive or user)");
    }

    Estimator parse_estimator(std::string_view text)
    {
        if (text == "zhang")
            return Estimator::zhang;
        if (text == "lower")
            return Estimator::lower;
        if (text == "upper")
            return Estimator::upper;
        if (text == "optimal")
            return Estimator::optimal;
        throw std::invalid_argument("unknown estimator '" + std::string(text) +
                                    "' (expected zhang, lower, upper or optimal)");
    }

    ModeCatalog enumerate_modes(std::size_t m, std::size_t n, std::size_t k, CatalogSource source)
    {
        if (m < 1 || n < 1 || k < 1)
            throw precondition_error("enumerate_modes: M, N and K must be at least 1");

        std::vector<Mode> candidates;
        switch (source)
        {
        case CatalogSource::standard:
            for (std::size_t m_a : {1, 2, 4, 6})
                candidates.push_back(Mode::svd(m_a, n));
            candidates.push_back(Mode::bd(4, n, 2));
            candidates.push_back(Mode::bd(6, n, 2));
            candidates.push_back(Mode::bd(6, n, 3));
            break;
        case CatalogSource::exhaustive:
            for (std::size_t m_a = 1; m_a <= m; ++m_a)
                candidates.push_back(Mode::svd(m_a, n));
            for (std::size_t m_a = 1; m_a <= m; ++m_a)
                for (std::size_t k_a = 2; k_a <= k; ++k_a)
                    candidates.push_back(Mode::bd(m_a, n, k_a));
            break;
        case CatalogSource::user_supplied:
            throw precondition_error("enumerate_modes: user-supplied catalogs are built from labels");
        }

        ModeCatalog catalog{{}, source};
        for (auto &mode : candidates)
        {
            try
            {
                mode.validate(m, n, k);
                catalog.modes.push_back(std::move(mode));
            }
            catch (const infeasible_mode_error &)
            {
            }
        }
        if (catalog.modes.empty())
            throw precondition_error("enumerate_modes: no feasible mode");
        return catalog;
    }

    ModeCatalog catalog_from_labels(std::span<const std::string> labels, std::size_t m, std::size_t n, std::size_t k)
    {
        if (labels.empty())
            throw precondition_error("catalog_from_labels: no modes given");
        ModeCatalog catalog{{}, CatalogSource::user_supplied};
        for (const auto &label : labels)
        {
            Mode mode = Mode::parse(label, n);
            mode.validate(m, n, k);
            catalog.modes.push_back(std::move(mode));
        }
        return catalog;
    }

    ModeEvaluation evaluate_mode_instant(const Mode &mode, const ChannelSet &set, const PowerModel &pm,
                                         const Scenario &scenario, Estimator estimator)
    {
        const auto links = active_links(set, mode);
        const double w = scenario.w_max_hz, n0 = scenario.noise_density_w_per_hz;

        RateProfile estimate, realized;
        if (mode.scheme == Scheme::svd)
        {
            const std::size_t n_s = mode.n_streams();
            const PrecodeResult pre = svd_precode(links[0].delayed, n_s);
            realized = svd_capacity_profile(links[0].current, pre.precoders[0], n_s);
            estimate = estimator == Estimator::optimal ? realized : estimate_svd_profile(links[0].delayed, n_s);
        }
        else
        {
            std::vector<arma::cx_mat> delayed;
            for (const auto &link : links)
                delayed.push_back(link.delayed);
            const PrecodeResult pre = bd_precode(delayed, mode);
            const auto stats = link_stats(links);
            realized = bd_capacity_delayed_profile(links, pre, mode);
            switch (estimator)
            {
            case Estimator::zhang:
                estimate = estimate_bd_zhang_profile(pre.eff_delayed, mode, stats);
                break;
            case Estimator::lower:
                estimate = estimate_bd_lower_profile(pre.eff_delayed, mode, stats);
                break;
            case Estimator::upper:
                estimate = estimate_bd_upper_profile(pre.eff_delayed, mode, stats);
                break;
            case Estimator::optimal:
                estimate = realized;
                break;
            }
        }

        ModeEvaluation out;
        out.solved = solve_operating_point(mode, profile_in_power(std::move(estimate), w, n0), pm, scenario);
        out.realized = make_operating_point(mode.m_a, w, out.solved.p_t_w, realized.rate(out.solved.p_t_w, w, n0), pm);
        return out;
    }

    LinkStats homogeneous_link_stats(const Scenario &scenario, double distance_km)
    {
        scenario.validate();
        const DopplerParams dp = doppler_params(scenario.speed_kmh, scenario);
        return {large_scale_gain(distance_km, scenario), dp.rho, dp.eps_sq};
    }

    OperatingPoint evaluate_mode_ergodic(const Mode &mode, const Scenario &scenario, const PowerModel &pm,
                                         double distance_km, ErgodicBound bound)
    {
        const LinkStats stats = homogeneous_link_stats(scenario, distance_km);
        const double w = scenario.w_max_hz, n0 = scenario.noise_density_w_per_hz;
        if (mode.scheme == Scheme::svd)
            return solve_operating_point(mode, ergodic_su_in_power(mode, stats, w, n0), pm, scenario);
        const std::vector<LinkStats> all(mode.k_a, stats);
        return solve_operating_point(mode, ergodic_bd_in_power(bound, mode, all, w, n0), pm, scenario);
    }

    SwitchDecision select_mode_instant(const ModeCatalog &catalog, const ChannelSet &set, const PowerModel &pm,
                                       const Scenario &scenario, Estimator estimator)
    {
        return select(catalog,
                      [&](const Mode &mode)
                      {
                          const ModeEvaluation e = evaluate_mode_instant(mode, set, pm, scenario, estimator);
                          return std::make_pair(e.solved, e.realized);
                      });
    }

    SwitchDecision select_mode_ergodic(const ModeCatalog &catalog, const Scenario &scenario, const PowerModel &pm,
                                       double distance_km, double speed_kmh)
    {
        Scenario at_speed = scenario;
        at_speed.speed_kmh = speed_kmh;
        return select(catalog,
                      [&](const Mode &mode)
                      {
                          const OperatingPoint op = evaluate_mode_ergodic(mode, at_speed, pm, distance_km);
                          return std::make_pair(op, op);
                      });
    }

    std::vector<LookupEntry> build_lookup_table(const ModeCatalog &catalog,
                                                std::span<const std::pair<double, double>> grid,
                                                const PowerModel &pm, const Scenario &scenario)
    {
        if (grid.empty())
            throw precondition_error("build_lookup_table: empty grid");
        std::vector<LookupEntry> table;
        table.reserve(grid.size());
        for (const auto &[speed, distance] : grid)
        {
            const SwitchDecision d = select_mode_ergodic(catalog, scenario, pm, distance, speed);
            table.push_back({speed, distance, d.mode, d.op});
        }
        return table;
    }

    void write_lookup_csv(std::ostream &out, std::span<const LookupEntry> table)
    {
        out << "speed_kmh,distance_km,scheme,m_a,k_a,n_a,p_t_w,xi_bpj\n";
        for (const auto &e : table)
            out << fmt::format("{:.9g},{:.9g},{},{},{},{},{:.9g},{:.9g}\n", e.speed_kmh, e.distance_km,
                               e.mode.scheme == Scheme::svd ? "SVD" : "BD", e.mode.m_a, e.mode.k_a,
                               join_counts(e.mode.n_a), e.op.p_t_w, e.op.xi_bpj);
    }
}
