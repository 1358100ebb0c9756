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

// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance <cli-binary> <work-dir>

#include "oracles.hpp"

#include "bpjee/errors.hpp"
#include "bpjee/ergodic.hpp"
#include "bpjee/harness.hpp"
#include "bpjee/linkcap.hpp"
#include "bpjee/modeswitch.hpp"
#include "bpjee/optimizer.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace bpjee;

namespace
{
    constexpr double n0 = thermal_noise_w_per_hz;
    constexpr double w_max = 5e6;

    // Tolerances
    constexpr double gap_rel_tol = 1e-9;           // criterion 1
    constexpr double grid_xi_tol = 1e-4;           // criterion 2
    constexpr double c_iso_rel_tol = 0.05;         // criterion 3
    constexpr double lemma_se_factor = 2.0;        // criterion 4
    constexpr double second_diff_rel_tol = 1e-9;   // criterion 5
    constexpr double consistency_rel_tol = 1e-9;   // criterion 6
    constexpr double high_speed_eps_sq = 0.5;      // criterion 7
    constexpr double flat_rel_tol = 0.05;          // criterion 8
    constexpr double trend_se_factor = 2.0;        // criterion 8
    constexpr double estimator_rel_tol = 0.02;     // criterion 8

    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail += (detail.empty() ? "" : "; ") + what;
            }
        }
    };

    struct Instance
    {
        Mode mode;
        std::vector<ActiveLink> links;
        PrecodeResult pre;
        std::vector<LinkStats> stats;
    };

    Instance make_instance(const Mode &mode, double speed, double distance, std::uint64_t seed)
    {
        Scenario sc;
        sc.speed_kmh = speed;
        sc.distances_km = {distance};
        Instance inst{mode, active_links(draw_channel_set(sc, 6, 2, 3, seed), mode), {}, {}};
        if (mode.scheme == Scheme::svd)
            inst.pre = svd_precode(inst.links[0].delayed, mode.n_streams());
        else
        {
            std::vector<arma::cx_mat> delayed;
            for (const auto &l : inst.links)
                delayed.push_back(l.delayed);
            inst.pre = bd_precode(delayed, mode);
        }
        inst.stats = link_stats(inst.links);
        return inst;
    }

    std::vector<arma::cx_mat> currents(const Instance &inst)
    {
        std::vector<arma::cx_mat> out;
        for (const auto &l : inst.links)
            out.push_back(l.current);
        return out;
    }

    struct NamedProfile
    {
        std::string name;
        RateProfile profile;
    };

    // Every capacity and estimator that feeds the P_t solve, except the difference-of-bounds one
    std::vector<NamedProfile> concave_profiles(const Instance &inst)
    {
        std::vector<NamedProfile> out;
        const std::size_t n_s = inst.mode.n_streams();
        if (inst.mode.scheme == Scheme::svd)
        {
            out.push_back({"svd_capacity", svd_capacity_profile(inst.links[0].current, inst.pre.precoders[0], n_s)});
            out.push_back({"estimate_svd", estimate_svd_profile(inst.links[0].delayed, n_s)});
            return out;
        }
        const auto cur = currents(inst);
        const PrecodeResult perfect = bd_precode(cur, inst.mode);
        out.push_back({"bd_capacity_perfect", bd_capacity_perfect_profile(cur, perfect.precoders, n_s)});
        out.push_back({"bd_capacity_delayed", bd_capacity_delayed_profile(inst.links, inst.pre, inst.mode)});
        out.push_back({"estimate_bd_lower", estimate_bd_lower_profile(inst.pre.eff_delayed, inst.mode, inst.stats)});
        out.push_back({"estimate_bd_upper", estimate_bd_upper_profile(inst.pre.eff_delayed, inst.mode, inst.stats)});
        return out;
    }

    // ---- 1 -------------------------------------------------------------------------------------
    Outcome bound_algebra()
    {
        Outcome out;
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> speed(1.0, 200.0), dist(0.3, 3.0), log_p(-2.0, 3.0);
        const Mode modes[] = {Mode::bd(4, 2, 2), Mode::bd(6, 2, 2), Mode::bd(6, 2, 3)};
        double worst_gap = 0.0;
        int violations = 0, ties = 0;
        for (int i = 0; i < 1000; ++i)
        {
            const Instance inst = make_instance(modes[i % 3], speed(rng), dist(rng), rng());
            const double p = std::pow(10.0, log_p(rng));
            const auto &eff = inst.pre.eff_delayed;
            const double z = estimate_bd_zhang(eff, p, w_max, n0, inst.mode, inst.stats);
            const double lo = estimate_bd_lower(eff, p, w_max, n0, inst.mode, inst.stats);
            const double up = estimate_bd_upper(eff, p, w_max, n0, inst.mode, inst.stats);
            double gap = 0.0;
            for (std::size_t k = 0; k < inst.mode.k_a; ++k)
                gap += double(inst.mode.n_a[k]) / double(inst.mode.m_a) * std::numbers::log2e;
            gap *= w_max;
            worst_gap = std::max(worst_gap, oracle::rel_diff(up - lo, gap));
            violations += z > lo ? 1 : 0;
            ties += z == lo ? 1 : 0;
        }
        out.require(worst_gap <= gap_rel_tol, fmt::format("gap error {:.3g}", worst_gap));
        out.require(violations == 0, fmt::format("{} instances with zhang > lower", violations));
        out.require(ties == 0, fmt::format("{} ties with eps^2 > 0", ties));
        out.detail = out.pass ? fmt::format("1000 instances, worst gap error {:.2g}", worst_gap) : out.detail;
        return out;
    }

    // ---- 2 -------------------------------------------------------------------------------------
    Outcome fixed_point_optimality()
    {
        Outcome out;
        std::mt19937_64 rng(202);
        std::uniform_real_distribution<double> speed(0.0, 150.0), dist(0.3, 3.0);
        const ModeCatalog catalog = enumerate_modes(6, 2, 3, CatalogSource::standard);
        const PowerModel pm;
        double worst = 0.0;
        std::map<std::string, int> used;
        for (int i = 0; i < 100; ++i)
        {
            const Mode &mode = catalog.modes[i % catalog.modes.size()];
            const Instance inst = make_instance(mode, speed(rng), dist(rng), rng());
            const auto profiles = concave_profiles(inst);
            const NamedProfile &np = profiles[std::size_t(i / catalog.modes.size()) % profiles.size()];
            ++used[np.name];
            const RateProfile prof = np.profile;
            ConcaveFn f{[&](double p) { return prof.rate(p, w_max, n0); },
                        [&](double p) { return prof.d_rate_d_power(p, w_max, n0); }};
            const double p_star = optimal_power_fixed_pt(f, w_max, mode.m_a, pm);
            const double xi_star = f(p_star) / total_power(pm, p_star, mode.m_a, w_max);
            double best = 0.0;
            for (int g = 0; g < 10000; ++g)
            {
                const double p = 1e-3 * std::pow(1e7, g / 9999.0);
                best = std::max(best, f(p) / total_power(pm, p, mode.m_a, w_max));
            }
            const double shortfall = 1.0 - xi_star / best;
            worst = std::max(worst, shortfall);
            out.require(xi_star >= (1.0 - grid_xi_tol) * best,
                        fmt::format("{} {}: xi {:.9g} < grid {:.9g}", mode.label(), np.name, xi_star, best));
        }
        if (out.pass)
        {
            out.detail = fmt::format("100 instances, worst shortfall vs grid {:.2g};", worst);
            for (const auto &[name, count] : used)
                out.detail += fmt::format(" {}={}", name, count);
        }
        return out;
    }

    // ---- 3 -------------------------------------------------------------------------------------
    Outcome c_iso_accuracy()
    {
        Outcome out;
        double worst = 0.0;
        for (auto [m, n] : {std::pair{2u, 2u}, std::pair{4u, 2u}, std::pair{6u, 2u}})
            for (double snr_db : {0.0, 10.0, 20.0})
            {
                const double gamma = std::pow(10.0, snr_db / 10.0);
                std::mt19937_64 rng(303 + m * 100 + std::uint64_t(snr_db));
                double sum = 0.0;
                for (int s = 0; s < 10000; ++s)
                {
                    const arma::cx_mat h = oracle::gaussian(n, m, rng);
                    sum += oracle::log2_det(arma::eye<arma::cx_mat>(n, n) + gamma / double(m) * h * h.t());
                }
                const double mc = sum / 10000.0;
                const double err = oracle::rel_diff(c_iso(double(m) / double(n), gamma, n), mc);
                worst = std::max(worst, err);
                out.require(err < c_iso_rel_tol, fmt::format("({},{}) at {} dB: {:.3g}", m, n, snr_db, err));
            }
        if (out.pass)
            out.detail = fmt::format("worst relative error {:.3g}", worst);
        return out;
    }

    // ---- 4 -------------------------------------------------------------------------------------
    Outcome lemma_rate_loss()
    {
        Outcome out;
        const Mode mode = Mode::bd(6, 2, 3);
        struct Point
        {
            double speed, p_t;
        };
        for (const Point pt : {Point{10.0, 10.0}, Point{30.0, 10.0}, Point{120.0, 40.0}})
        {
            std::vector<double> diff;
            double bound = 0.0;
            for (int s = 0; s < 1000; ++s)
            {
                const Instance inst = make_instance(mode, pt.speed, 1.0, std::uint64_t(s));
                const auto cur = currents(inst);
                const PrecodeResult perfect = bd_precode(cur, mode);
                const double r_p = bd_capacity_perfect(cur, perfect.precoders, pt.p_t, w_max, n0, 6);
                const double r_d = bd_capacity_delayed(inst.links, inst.pre, pt.p_t, w_max, n0, mode);
                diff.push_back(r_p - r_d);
                bound = rate_loss_upper(mode, inst.stats, pt.p_t, w_max, n0);
            }
            const arma::vec d(diff);
            const double se = arma::stddev(d) / std::sqrt(double(d.n_elem));
            const double mean = arma::mean(d);
            out.require(mean <= bound + lemma_se_factor * se,
                        fmt::format("{} km/h: mean loss {:.4g} > bound {:.4g}", pt.speed, mean, bound));
            if (out.pass)
                out.detail += fmt::format("{}{} km/h loss {:.3g} <= {:.3g}", out.detail.empty() ? "" : ", ", pt.speed,
                                          mean, bound);
        }
        return out;
    }

    // ---- 5 -------------------------------------------------------------------------------------
    Outcome concavity_suite()
    {
        Outcome out;
        std::mt19937_64 rng(505);
        std::uniform_real_distribution<double> speed(0.0, 150.0), dist(0.3, 3.0), log_p(0.0, 3.0);
        const ModeCatalog catalog = enumerate_modes(6, 2, 3, CatalogSource::standard);
        std::map<std::string, int> checked;
        for (int i = 0; i < 70; ++i)
        {
            const Mode &mode = catalog.modes[i % catalog.modes.size()];
            const Instance inst = make_instance(mode, speed(rng), dist(rng), rng());
            const double p_max = std::pow(10.0, log_p(rng));
            const double p_fixed = std::pow(10.0, log_p(rng) - 1.0);
            for (const auto &np : concave_profiles(inst))
            {
                ++checked[np.name];
                auto test = [&](const std::function<double(double)> &f, double hi, const char *axis)
                {
                    const double h = hi / 200.0;
                    for (int g = 2; g < 200; ++g)
                    {
                        const double x = g * h;
                        const double f0 = f(x - h), f1 = f(x), f2 = f(x + h);
                        if (!(f2 > f1))
                        {
                            out.require(false, fmt::format("{} not increasing in {}", np.name, axis));
                            return;
                        }
                        if (f2 - 2.0 * f1 + f0 > second_diff_rel_tol * std::abs(f1))
                        {
                            out.require(false, fmt::format("{} not concave in {}", np.name, axis));
                            return;
                        }
                    }
                };
                test([&](double p) { return np.profile.rate(p, w_max, n0); }, p_max, "P_t");
                test([&](double w) { return np.profile.rate(p_fixed, w, n0); }, w_max, "W");
            }
        }
        if (out.pass)
        {
            out.detail = "200-point grids in P_t and W:";
            for (const auto &[name, count] : checked)
                out.detail += fmt::format(" {}={}", name, count);
        }
        return out;
    }

    // ---- 6 -------------------------------------------------------------------------------------
    Outcome consistency()
    {
        Outcome out;
        double worst_rho = 0.0, worst_eps = 0.0;
        for (std::uint64_t s = 0; s < 50; ++s)
        {
            const Instance still = make_instance(Mode::bd(6, 2, 3), 0.0, 1.0 + 0.03 * double(s), s);
            const auto cur = currents(still);
            const double p = 10.0;
            const double perfect = bd_capacity_perfect(cur, still.pre.precoders, p, w_max, n0, 6);
            const double delayed = bd_capacity_delayed(still.links, still.pre, p, w_max, n0, still.mode);
            worst_rho = std::max(worst_rho, oracle::rel_diff(perfect, delayed));

            const auto &eff = still.pre.eff_delayed;
            const double z = estimate_bd_zhang(eff, p, w_max, n0, still.mode, still.stats);
            const double lo = estimate_bd_lower(eff, p, w_max, n0, still.mode, still.stats);
            const double up = estimate_bd_upper(eff, p, w_max, n0, still.mode, still.stats);
            const double gap = w_max * 3.0 * (2.0 / 6.0) * std::numbers::log2e;
            worst_eps = std::max({worst_eps, oracle::rel_diff(z, lo), oracle::rel_diff(up - gap, lo)});
        }
        out.require(worst_rho < consistency_rel_tol, fmt::format("rho = 1 mismatch {:.3g}", worst_rho));
        out.require(worst_eps < consistency_rel_tol, fmt::format("eps = 0 estimator mismatch {:.3g}", worst_eps));

        // Zero transmit power: every capacity is zero; the upper estimate equals its constructed gap
        const Instance moving = make_instance(Mode::bd(6, 2, 3), 60.0, 1.0, 7);
        const Instance su = make_instance(Mode::svd(4, 2), 60.0, 1.0, 7);
        const auto cur = currents(moving);
        const PrecodeResult perfect = bd_precode(cur, moving.mode);
        const auto &eff = moving.pre.eff_delayed;
        const std::vector<LinkStats> stats(3, moving.stats[0]);
        const std::pair<const char *, double> zeros[] = {
            {"svd_capacity", svd_capacity(su.links[0].current, su.pre.precoders[0], 0.0, w_max, n0, 2)},
            {"estimate_svd", estimate_svd(su.links[0].delayed, 0.0, w_max, n0, 2)},
            {"bd_capacity_perfect", bd_capacity_perfect(cur, perfect.precoders, 0.0, w_max, n0, 6)},
            {"bd_capacity_delayed", bd_capacity_delayed(moving.links, moving.pre, 0.0, w_max, n0, moving.mode)},
            {"estimate_bd_zhang", estimate_bd_zhang(eff, 0.0, w_max, n0, moving.mode, moving.stats)},
            {"estimate_bd_lower", estimate_bd_lower(eff, 0.0, w_max, n0, moving.mode, moving.stats)},
            {"ergodic_su", ergodic_su(Mode::svd(4, 2), stats[0], 0.0, w_max, n0)},
            {"ergodic_bd_lower", ergodic_bd_lower(moving.mode, stats, 0.0, w_max, n0)},
            {"ergodic_bd_zhang", ergodic_bd_zhang(moving.mode, stats, 0.0, w_max, n0)},
        };
        for (const auto &[name, value] : zeros)
            out.require(value == 0.0, fmt::format("{} = {:.3g} at P_t = 0", name, value));
        const double up0 = estimate_bd_upper(eff, 0.0, w_max, n0, moving.mode, moving.stats);
        const double gap = w_max * 3.0 * (2.0 / 6.0) * std::numbers::log2e;
        out.require(oracle::rel_diff(up0, gap) < consistency_rel_tol, "upper estimate at P_t = 0 is not its gap");
        if (out.pass)
            out.detail = fmt::format("rho=1 diff {:.2g}, eps=0 diff {:.2g}, 9 capacities zero at P_t=0 "
                                     "(upper = its gap {:.6g})",
                                     worst_rho, worst_eps, up0);
        return out;
    }

    // ---- 7 -------------------------------------------------------------------------------------
    Outcome mode_map_claims()
    {
        Outcome out;
        const PowerModel pm;
        const Scenario sc;
        const ModeCatalog catalog = enumerate_modes(6, 2, 3, CatalogSource::standard);
        auto chosen = [&](double d, double v) { return select_mode_ergodic(catalog, sc, pm, d, v).mode; };

        for (double d : {0.5, 1.0, 1.5})
        {
            const Mode m = chosen(d, 3.0);
            out.require(m.scheme == Scheme::bd && m.k_a == 3, fmt::format("(a) 3 km/h, {} km: {}", d, m.label()));
        }

        int b_hits = 0;
        std::string b_log;
        for (double v : {100.0, 120.0, 140.0})
        {
            const double eps_sq = doppler_params(v, sc).eps_sq;
            const Mode at15 = chosen(1.5, v), at21 = chosen(2.1, v);
            const bool ok = eps_sq >= high_speed_eps_sq && at15 == Mode::svd(2, 2) && at21 == Mode::svd(1, 2);
            b_hits += ok ? 1 : 0;
            b_log += fmt::format(" {}km/h(eps2={:.2f}):{}/{}", v, eps_sq, at15.label(), at21.label());

            if (eps_sq < high_speed_eps_sq)
                continue;
            std::size_t prev = 0;
            std::string c_log;
            bool monotone = true;
            for (double d = 2.5; d <= 4.0 + 1e-9; d += 0.25)
            {
                const Mode m = chosen(d, v);
                c_log += " " + m.label();
                monotone = monotone && m.m_a >= prev;
                prev = m.m_a;
            }
            out.require(monotone, fmt::format("(c) {} km/h:{}", v, c_log));
        }
        out.require(b_hits >= 1, "(b)" + b_log);
        if (out.pass)
            out.detail = fmt::format("(b) holds at {}/3 high speeds;{}", b_hits, b_log);
        return out;
    }

    // ---- 8 -------------------------------------------------------------------------------------
    Outcome trend_suite()
    {
        Outcome out;
        RunConfig cfg;
        cfg.trials = 1000;
        const double speeds[] = {3.0, 30.0, 120.0};
        const auto modes = cfg.catalog().modes;
        const SweepResult res = run_estimator_comparison(cfg, speeds, 1.0, modes);

        std::map<std::pair<std::string, Estimator>, std::vector<const SweepRow *>> series;
        for (const auto &row : res.rows)
            series[{row.mode, row.estimator}].push_back(&row);
        auto pair_se = [](const SweepRow *a, const SweepRow *b) { return std::hypot(a->se_xi_bpj, b->se_xi_bpj); };

        for (const Mode &mode : modes)
        {
            const auto &s = series[{mode.label(), Estimator::upper}];
            const std::string name = mode.label();
            if (name == "SIMO" || name == "SU-MIMO(2,2)")
            {
                double lo = s[0]->mean_xi_bpj, hi = lo;
                for (const auto *r : s)
                    lo = std::min(lo, r->mean_xi_bpj), hi = std::max(hi, r->mean_xi_bpj);
                out.require((hi - lo) / lo < flat_rel_tol, fmt::format("{} varies {:.3g}", name, (hi - lo) / lo));
                out.detail += fmt::format("{} spread {:.2f}%; ", name, 100.0 * (hi - lo) / lo);
            }
            else
            {
                // Every other mode decreases on each speed step by more than the paired margin
                for (std::size_t i = 1; i < s.size(); ++i)
                    out.require(s[i]->mean_xi_bpj < s[i - 1]->mean_xi_bpj - trend_se_factor * pair_se(s[i - 1], s[i]),
                                fmt::format("{} not decreasing between {} and {} km/h", name, speeds[i - 1], speeds[i]));
                out.detail += fmt::format("{} {:.0f}->{:.0f}->{:.0f}; ", name, s[0]->mean_xi_bpj, s[1]->mean_xi_bpj,
                                          s[2]->mean_xi_bpj);
            }

            if (mode.scheme == Scheme::svd)
            {
                const auto &opt = series[{name, Estimator::optimal}];
                for (std::size_t i = 0; i < s.size(); ++i)
                {
                    const double rel = std::abs(s[i]->mean_xi_bpj - opt[i]->mean_xi_bpj) / opt[i]->mean_xi_bpj;
                    out.require(rel < estimator_rel_tol,
                                fmt::format("{} estimator {:.3g} from optimal at {} km/h", name, rel, speeds[i]));
                }
            }
        }
        return out;
    }

    // ---- 9 -------------------------------------------------------------------------------------
    Outcome cli_determinism(const std::string &cli, const std::filesystem::path &work)
    {
        Outcome out;
        std::filesystem::remove_all(work);
        std::filesystem::create_directories(work);
        const auto cfg = work / "run.cfg";
        {
            std::ofstream f(cfg);
            f << "run.trials = 40\nrun.seed = 9\nsweep.speeds_kmh = 3, 60, 120\nsweep.distances_km = 0.5, 1.5, 2.5\n";
        }
        const char *commands[] = {"single --mode 'MU-MIMO(6,2,3)'", "sweep-speed", "estimators", "mode-map"};
        const char *outputs[] = {"single.csv", "sweep_speed.csv", "estimators.csv", "mode_map.csv"};
        for (std::size_t c = 0; c < std::size(commands); ++c)
        {
            std::string first;
            for (int run = 0; run < 2; ++run)
            {
                const auto dir = work / fmt::format("run{}", run);
                const std::string cmd = fmt::format("\"{}\" {} --config \"{}\" --out \"{}\" > /dev/null", cli,
                                                    commands[c], cfg.string(), dir.string());
                if (std::system(cmd.c_str()) != 0)
                {
                    out.require(false, fmt::format("'{}' failed", commands[c]));
                    break;
                }
                std::ifstream in(dir / outputs[c], std::ios::binary);
                std::ostringstream bytes;
                bytes << in.rdbuf();
                if (run == 0)
                    first = bytes.str();
                else
                    out.require(!first.empty() && bytes.str() == first, fmt::format("{} differs", outputs[c]));
            }
        }
        if (out.pass)
            out.detail = "single, sweep-speed, estimators and mode-map CSVs byte-identical across runs";
        return out;
    }
}

int main(int argc, char **argv)
{
    if (argc < 3)
    {
        std::cerr << "usage: acceptance <cli-binary> <work-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path work = argv[2];

    struct Criterion
    {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "bound algebra", 10.0, bound_algebra},
        {2, "fixed-point optimality", 120.0, fixed_point_optimality},
        {3, "C_iso accuracy", 60.0, c_iso_accuracy},
        {4, "rate-loss bound (statistical)", 600.0, lemma_rate_loss},
        {5, "concavity and monotonicity", 600.0, concavity_suite},
        {6, "consistency degenerations", 600.0, consistency},
        {7, "mode-map claims", 300.0, mode_map_claims},
        {8, "trend suite", 600.0, trend_suite},
        {9, "CLI determinism", 600.0, [&] { return cli_determinism(cli, work); }},
    };

    int failed = 0;
    for (const auto &c : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(elapsed < c.budget_s, fmt::format("runtime {:.1f} s over budget {:.0f} s", elapsed, c.budget_s));
        failed += o.pass ? 0 : 1;
        std::cout << fmt::format("criterion {} {}: {} ({:.1f} s) {}\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                                 elapsed, o.detail)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", std::size(criteria) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
