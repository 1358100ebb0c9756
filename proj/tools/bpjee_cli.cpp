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

// Command-line front end: single, sweep-speed, estimators and mode-map subcommands

#include "bpjee/errors.hpp"
#include "bpjee/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace
{
    using namespace bpjee;

    struct Options
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<unsigned> threads;
        std::string out_dir = ".";
        std::vector<std::string> settings;
        std::optional<double> eta, p_cir, p_sp_bw, p_ac_bw, p_sta;
        std::optional<std::string> estimator;
        std::optional<double> speed, distance;
        std::string mode = "MU-MIMO(6,2,3)";
    };

    // Defaults, then the config file, then --set, then dedicated flags
    RunConfig build_config(const Options &opt)
    {
        RunConfig cfg;
        if (!opt.config_path.empty())
            cfg = load_config(opt.config_path);
        for (const auto &kv : opt.settings)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (opt.seed)
            cfg.seed = *opt.seed;
        if (opt.trials)
            cfg.trials = *opt.trials;
        if (opt.threads)
            cfg.threads = *opt.threads;
        if (opt.eta)
            cfg.power.eta = *opt.eta;
        if (opt.p_cir)
            cfg.power.p_cir_w = *opt.p_cir;
        if (opt.p_sp_bw)
            cfg.power.p_sp_bw_w_per_hz = *opt.p_sp_bw;
        if (opt.p_ac_bw)
            cfg.power.p_ac_bw_w_per_hz = *opt.p_ac_bw;
        if (opt.p_sta)
            cfg.power.p_sta_w = *opt.p_sta;
        if (opt.estimator)
            cfg.estimator = parse_estimator(*opt.estimator);
        if (opt.speed)
            cfg.scenario.speed_kmh = *opt.speed;
        if (opt.distance)
            cfg.scenario.distances_km = {*opt.distance};
        cfg.validate();
        return cfg;
    }

    std::filesystem::path output_path(const Options &opt, const std::string &name)
    {
        std::filesystem::create_directories(opt.out_dir);
        return std::filesystem::path(opt.out_dir) / name;
    }

    template <typename Writer>
    void write_file(const std::filesystem::path &path, Writer &&writer)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw io_error("cannot write '" + path.string() + "'");
        writer(out);
        if (!out.flush())
            throw io_error("failed writing '" + path.string() + "'");
        std::cout << "wrote " << path.string() << '\n';
    }

    void run_single(const Options &opt)
    {
        const RunConfig cfg = build_config(opt);
        Mode mode = Mode::parse(opt.mode, cfg.system.n);
        mode.validate(cfg.system.m, cfg.system.n, cfg.system.k);
        const double distance = cfg.scenario.distances_km.front();
        const double speed = cfg.scenario.speed_kmh;

        const OperatingPoint erg = evaluate_mode_ergodic(mode, cfg.scenario, cfg.power, distance);
        const double speeds[] = {speed};
        const Mode modes[] = {mode};
        const SweepResult inst = run_speed_sweep(cfg, speeds, distance, modes);
        const SweepRow &row = inst.rows.front();
        const double mean_total = row.status == "ok" ? total_power(cfg.power, row.mean_p_t_w, mode.m_a, cfg.scenario.w_max_hz) : 0.0;

        std::cout << fmt::format("mode {} at {} km/h, {} km\n", mode.label(), format_real(speed), format_real(distance));
        std::cout << fmt::format("ergodic: W = {} Hz, P_t = {} W, R = {} bit/s, P_total = {} W, xi = {} bit/J\n",
                                 format_real(erg.w_hz), format_real(erg.p_t_w), format_real(erg.capacity_bps),
                                 format_real(erg.total_power_w), format_real(erg.xi_bpj));
        std::cout << fmt::format("instant ({}, {} trials): mean P_t = {} W, mean R = {} bit/s, mean xi = {} +- {} bit/J\n",
                                 to_string(cfg.estimator), row.trials, format_real(row.mean_p_t_w),
                                 format_real(row.mean_capacity_bps), format_real(row.mean_xi_bpj),
                                 format_real(row.se_xi_bpj));

        write_file(output_path(opt, "single.csv"),
                   [&](std::ostream &out)
                   {
                       out << "source,mode,estimator,speed_kmh,distance_km,w_hz,p_t_w,capacity_bps,total_power_w,xi_bpj\n";
                       out << fmt::format("ergodic,\"{}\",upper,{},{},{},{},{},{},{}\n", mode.label(), format_real(speed),
                                          format_real(distance), format_real(erg.w_hz), format_real(erg.p_t_w),
                                          format_real(erg.capacity_bps), format_real(erg.total_power_w),
                                          format_real(erg.xi_bpj));
                       out << fmt::format("instant,\"{}\",{},{},{},{},{},{},{},{}\n", mode.label(),
                                          to_string(cfg.estimator), format_real(speed), format_real(distance),
                                          format_real(cfg.scenario.w_max_hz), format_real(row.mean_p_t_w),
                                          format_real(row.mean_capacity_bps), format_real(mean_total),
                                          format_real(row.mean_xi_bpj));
                   });
    }

    void run_sweep_command(const Options &opt, bool all_estimators)
    {
        const RunConfig cfg = build_config(opt);
        const auto modes = cfg.catalog().modes;
        const double distance = cfg.scenario.distances_km.front();
        const SweepResult result = all_estimators ? run_estimator_comparison(cfg, cfg.speeds_kmh, distance, modes)
                                                  : run_speed_sweep(cfg, cfg.speeds_kmh, distance, modes);
        const std::string stem = all_estimators ? "estimators" : "sweep_speed";
        write_file(output_path(opt, stem + ".csv"), [&](std::ostream &out) { write_sweep_csv(out, result); });
        const auto svg = output_path(opt, stem + ".svg");
        emit_plot(result, svg);
        std::cout << "wrote " << svg.string() << '\n';
    }

    void run_mode_map_command(const Options &opt)
    {
        const RunConfig cfg = build_config(opt);
        const auto table = run_mode_map(cfg, cfg.speeds_kmh, cfg.distances_km);
        write_file(output_path(opt, "mode_map.csv"), [&](std::ostream &out) { write_lookup_csv(out, table); });
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Energy-efficient mode switching for downlink multiuser MIMO with delayed CSIT"};
    app.fallthrough();
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "base random seed");
    app.add_option("--trials", opt.trials, "Monte Carlo trials per point");
    app.add_option("--threads", opt.threads, "worker threads (0: all cores)");
    app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    app.add_option("--set", opt.settings, "override a config key, key=value")->take_all();
    app.add_option("--eta", opt.eta, "power conversion efficiency");
    app.add_option("--p-cir", opt.p_cir, "circuit power per active antenna (W)");
    app.add_option("--p-sp-bw", opt.p_sp_bw, "signal processing power per antenna and Hz (W/Hz)");
    app.add_option("--p-ac-bw", opt.p_ac_bw, "antenna-independent power per Hz (W/Hz)");
    app.add_option("--p-sta", opt.p_sta, "static power (W)");

    auto *single = app.add_subcommand("single", "operating point of one mode in one scenario");
    single->add_option("--mode", opt.mode, "mode label, e.g. SIMO, SU-MIMO(2,2), MU-MIMO(6,2,3)")->capture_default_str();
    single->add_option("--estimator", opt.estimator, "zhang, lower, upper or optimal");
    single->add_option("--speed", opt.speed, "user speed (km/h)");
    single->add_option("--distance", opt.distance, "user distance (km)");

    auto *sweep = app.add_subcommand("sweep-speed", "mean BPJ-EE of every catalog mode over the speed grid");
    sweep->add_option("--estimator", opt.estimator, "zhang, lower, upper or optimal");
    sweep->add_option("--distance", opt.distance, "user distance (km)");

    auto *estimators = app.add_subcommand("estimators", "all four estimators side by side over the speed grid");
    estimators->add_option("--distance", opt.distance, "user distance (km)");

    auto *mode_map = app.add_subcommand("mode-map", "ergodic mode-switching lookup table over speed x distance");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        if (single->parsed())
            run_single(opt);
        else if (sweep->parsed())
            run_sweep_command(opt, false);
        else if (estimators->parsed())
            run_sweep_command(opt, true);
        else if (mode_map->parsed())
            run_mode_map_command(opt);
    }
    catch (const std::exception &e)
    {
        std::cerr << "bpjee: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
