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

#include "bpjee/harness.hpp"
#include "bpjee/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace bpjee
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> parts;
            std::size_t start = 0;
            while (true)
            {
                const std::size_t pos = s.find(sep, start);
                parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return parts;
        }

        double to_real(std::string_view key, std::string_view text)
        {
            text = trim(text);
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
                throw std::invalid_argument(fmt::format("{}: '{}' is not a finite number", key, text));
            return value;
        }

        std::uint64_t to_count(std::string_view key, std::string_view text)
        {
            text = trim(text);
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw std::invalid_argument(fmt::format("{}: '{}' is not a nonnegative integer", key, text));
            return value;
        }

        std::vector<double> to_reals(std::string_view key, std::string_view text)
        {
            std::vector<double> values;
            for (auto part : split(text, ','))
                values.push_back(to_real(key, part));
            return values;
        }

        // Runs body(i) for i in [0, count) on up to `threads` workers; rethrows the first failure
        template <typename Body>
        void parallel_for(std::size_t count, unsigned threads, Body &&body)
        {
            if (threads == 0)
                threads = std::max(1u, std::thread::hardware_concurrency());
            threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
            if (threads <= 1)
            {
                for (std::size_t i = 0; i < count; ++i)
                    body(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> workers;
            for (unsigned t = 0; t < threads; ++t)
                workers.emplace_back(
                    [&]
                    {
                        for (std::size_t i = next++; i < count; i = next++)
                        {
                            try
                            {
                                body(i);
                            }
                            catch (...)
                            {
                                std::lock_guard lock(failure_mutex);
                                if (!failure)
                                    failure = std::current_exception();
                                next = count;
                            }
                        }
                    });
            for (auto &w : workers)
                w.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        struct Moments
        {
            std::size_t count = 0;
            double sum = 0.0, sum_sq = 0.0;

            void add(double x)
            {
                ++count;
                sum += x;
                sum_sq += x * x;
            }
            double mean() const { return count ? sum / double(count) : 0.0; }
            double standard_error() const
            {
                if (count < 2)
                    return 0.0;
                const double m = mean();
                const double var = std::max(0.0, (sum_sq - double(count) * m * m) / double(count - 1));
                return std::sqrt(var / double(count));
            }
        };

        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char c : s)
                out += c == '"' ? std::string("\"\"") : std::string(1, c);
            return out + "\"";
        }

        std::string xml_escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
                }
            }
            return out;
        }
    }

    std::string format_real(double value) { return fmt::format("{:.9g}", value); }

    void RunConfig::validate() const
    {
        scenario.validate();
        power.validate();
        if (system.m < 1 || system.n < 1 || system.k < 1)
            throw std::invalid_argument("system.m, system.n and system.k must be at least 1");
        if (scenario.distances_km.size() != 1 && scenario.distances_km.size() != system.k)
            throw std::invalid_argument("scenario.distances_km needs one entry or one per user");
        if (trials < 1)
            throw std::invalid_argument("run.trials must be at least 1");
        if (catalog_source == CatalogSource::user_supplied && mode_labels.empty())
            throw std::invalid_argument("catalog.source = user requires catalog.modes");
    }

    ModeCatalog RunConfig::catalog() const
    {
        if (catalog_source == CatalogSource::user_supplied)
            return catalog_from_labels(mode_labels, system.m, system.n, system.k);
        return enumerate_modes(system.m, system.n, system.k, catalog_source);
    }

    void apply_setting(RunConfig &cfg, std::string_view key, std::string_view value)
    {
        key = trim(key);
        value = trim(value);
        Scenario &sc = cfg.scenario;
        PowerModel &pm = cfg.power;

        if (key == "scenario.distance_km" || key == "scenario.distances_km")
            sc.distances_km = to_reals(key, value);
        else if (key == "scenario.speed_kmh")
            sc.speed_kmh = to_real(key, value);
        else if (key == "scenario.carrier_hz")
            sc.carrier_hz = to_real(key, value);
        else if (key == "scenario.delay_s")
            sc.delay_s = to_real(key, value);
        else if (key == "scenario.noise_w_per_hz")
            sc.noise_density_w_per_hz = to_real(key, value);
        else if (key == "scenario.w_max_hz")
            sc.w_max_hz = to_real(key, value);
        else if (key == "scenario.pathloss_intercept_db")
            sc.pathloss_db_intercept = to_real(key, value);
        else if (key == "scenario.pathloss_slope_db")
            sc.pathloss_db_slope = to_real(key, value);
        else if (key == "scenario.shadow_multiplier")
            sc.shadow_multiplier = to_real(key, value);
        else if (key == "power.eta")
            pm.eta = to_real(key, value);
        else if (key == "power.p_cir_w")
            pm.p_cir_w = to_real(key, value);
        else if (key == "power.p_sp_bw_w_per_hz")
            pm.p_sp_bw_w_per_hz = to_real(key, value);
        else if (key == "power.p_ac_bw_w_per_hz")
            pm.p_ac_bw_w_per_hz = to_real(key, value);
        else if (key == "power.p_sta_w")
            pm.p_sta_w = to_real(key, value);
        else if (key == "system.m")
            cfg.system.m = to_count(key, value);
        else if (key == "system.n")
            cfg.system.n = to_count(key, value);
        else if (key == "system.k")
            cfg.system.k = to_count(key, value);
        else if (key == "catalog.source")
            cfg.catalog_source = parse_catalog_source(value);
        else if (key == "catalog.modes")
        {
            // Labels contain commas, so the list separator is ';'
            cfg.mode_labels.clear();
            for (auto part : split(value, ';'))
                if (!part.empty())
                    cfg.mode_labels.emplace_back(part);
        }
        else if (key == "run.trials")
            cfg.trials = to_count(key, value);
        else if (key == "run.seed")
            cfg.seed = to_count(key, value);
        else if (key == "run.estimator")
            cfg.estimator = parse_estimator(value);
        else if (key == "run.threads")
            cfg.threads = unsigned(to_count(key, value));
        else if (key == "sweep.speeds_kmh")
            cfg.speeds_kmh = to_reals(key, value);
        else if (key == "sweep.distances_km")
            cfg.distances_km = to_reals(key, value);
        else
            throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
    }

    RunConfig parse_config(std::istream &in, RunConfig base)
    {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const std::string_view text = trim(line);
            if (text.empty() || text.front() == '#')
                continue;
            const std::size_t eq = text.find('=');
            if (eq == std::string_view::npos)
                throw std::invalid_argument(fmt::format("config line {}: expected 'key = value'", line_no));
            try
            {
                apply_setting(base, text.substr(0, eq), text.substr(eq + 1));
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument(fmt::format("config line {}: {}", line_no, e.what()));
            }
        }
        return base;
    }

    RunConfig load_config(const std::filesystem::path &path, RunConfig base)
    {
        std::ifstream in(path);
        if (!in)
            throw io_error("cannot open config file '" + path.string() + "'");
        return parse_config(in, std::move(base));
    }

    SweepResult run_sweep(const RunConfig &cfg, std::span<const double> speeds_kmh, double distance_km,
                          std::span<const Mode> modes, std::span<const Estimator> estimators)
    {
        cfg.validate();
        if (speeds_kmh.empty() || modes.empty() || estimators.empty())
            throw precondition_error("sweep: speeds, modes and estimators must be nonempty");

        const SystemSize &sys = cfg.system;
        std::vector<bool> feasible(modes.size());
        for (std::size_t j = 0; j < modes.size(); ++j)
        {
            try
            {
                modes[j].validate(sys.m, sys.n, sys.k);
                feasible[j] = true;
            }
            catch (const infeasible_mode_error &)
            {
                feasible[j] = false;
            }
        }

        const std::size_t n_cells = modes.size() * estimators.size();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        SweepResult result;
        for (double speed : speeds_kmh)
        {
            Scenario sc = cfg.scenario;
            sc.speed_kmh = speed;
            sc.distances_km = {distance_km};

            // One slot per (trial, mode, estimator); NaN marks a draw on which the mode was infeasible
            std::vector<double> xi(cfg.trials * n_cells, nan), p_t(xi.size(), nan), cap(xi.size(), nan);
            parallel_for(cfg.trials, cfg.threads,
                         [&](std::size_t t)
                         {
                             const ChannelSet set = draw_channel_set(sc, sys.m, sys.n, sys.k, trial_seed(cfg.seed, t));
                             for (std::size_t j = 0; j < modes.size(); ++j)
                             {
                                 if (!feasible[j])
                                     continue;
                                 for (std::size_t e = 0; e < estimators.size(); ++e)
                                 {
                                     const std::size_t slot = t * n_cells + j * estimators.size() + e;
                                     try
                                     {
                                         const ModeEvaluation ev =
                                             evaluate_mode_instant(modes[j], set, cfg.power, sc, estimators[e]);
                                         xi[slot] = ev.realized.xi_bpj;
                                         p_t[slot] = ev.realized.p_t_w;
                                         cap[slot] = ev.realized.capacity_bps;
                                     }
                                     catch (const infeasible_mode_error &)
                                     {
                                     }
                                 }
                             }
                         });

            for (std::size_t j = 0; j < modes.size(); ++j)
            {
                for (std::size_t e = 0; e < estimators.size(); ++e)
                {
                    Moments m_xi, m_pt, m_cap;
                    for (std::size_t t = 0; t < cfg.trials; ++t)
                    {
                        const std::size_t slot = t * n_cells + j * estimators.size() + e;
                        if (std::isnan(xi[slot]))
                            continue;
                        m_xi.add(xi[slot]);
                        m_pt.add(p_t[slot]);
                        m_cap.add(cap[slot]);
                    }
                    SweepRow row;
                    row.speed_kmh = speed;
                    row.mode = modes[j].label();
                    row.estimator = estimators[e];
                    row.trials = m_xi.count;
                    row.status = m_xi.count ? "ok" : "infeasible";
                    row.mean_xi_bpj = m_xi.count ? m_xi.mean() : nan;
                    row.se_xi_bpj = m_xi.count ? m_xi.standard_error() : nan;
                    row.mean_p_t_w = m_xi.count ? m_pt.mean() : nan;
                    row.mean_capacity_bps = m_xi.count ? m_cap.mean() : nan;
                    result.rows.push_back(std::move(row));
                }
            }
        }
        return result;
    }

    SweepResult run_speed_sweep(const RunConfig &cfg, std::span<const double> speeds_kmh, double distance_km,
                                std::span<const Mode> modes)
    {
        const Estimator estimators[] = {cfg.estimator};
        return run_sweep(cfg, speeds_kmh, distance_km, modes, estimators);
    }

    SweepResult run_estimator_comparison(const RunConfig &cfg, std::span<const double> speeds_kmh,
                                         double distance_km, std::span<const Mode> modes)
    {
        const Estimator estimators[] = {Estimator::zhang, Estimator::lower, Estimator::upper, Estimator::optimal};
        return run_sweep(cfg, speeds_kmh, distance_km, modes, estimators);
    }

    void write_sweep_csv(std::ostream &out, const SweepResult &result)
    {
        out << "speed_kmh,mode,estimator,mean_xi_bpj,se_xi_bpj,mean_p_t_w,mean_capacity_bps,trials,status\n";
        for (const auto &row : result.rows)
        {
            const bool ok = row.status == "ok";
            auto real = [&](double v) { return ok ? format_real(v) : std::string(); };
            out << format_real(row.speed_kmh) << ',' << csv_field(row.mode) << ',' << to_string(row.estimator) << ','
                << real(row.mean_xi_bpj) << ',' << real(row.se_xi_bpj) << ',' << real(row.mean_p_t_w) << ','
                << real(row.mean_capacity_bps) << ',' << row.trials << ',' << row.status << '\n';
        }
    }

    std::vector<LookupEntry> run_mode_map(const RunConfig &cfg, std::span<const double> speeds_kmh,
                                          std::span<const double> distances_km)
    {
        cfg.validate();
        if (speeds_kmh.empty() || distances_km.empty())
            throw precondition_error("mode map: speeds and distances must be nonempty");
        std::vector<std::pair<double, double>> grid;
        for (double v : speeds_kmh)
            for (double d : distances_km)
                grid.emplace_back(v, d);
        return build_lookup_table(cfg.catalog(), grid, cfg.power, cfg.scenario);
    }

    void emit_plot(const SweepResult &result, const std::filesystem::path &path)
    {
        // Series in first-appearance order, points in row order
        std::vector<std::string> names;
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        for (const auto &row : result.rows)
        {
            if (row.status != "ok")
                continue;
            const std::string name = row.mode + " / " + to_string(row.estimator);
            if (!series.contains(name))
                names.push_back(name);
            series[name].emplace_back(row.speed_kmh, row.mean_xi_bpj);
        }
        if (names.empty())
            throw precondition_error("emit_plot: no data to plot");

        double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_hi = 0.0;
        for (const auto &[name, pts] : series)
            for (const auto &[x, y] : pts)
            {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_hi = std::max(y_hi, y);
            }
        if (x_hi == x_lo)
            x_lo -= 1.0, x_hi += 1.0;
        if (y_hi <= 0.0)
            y_hi = 1.0;
        y_hi *= 1.05;

        constexpr double width = 720, height = 440, left = 80, right = 220, top = 30, bottom = 60;
        const double plot_w = width - left - right, plot_h = height - top - bottom;
        auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
        auto py = [&](double y) { return top + plot_h - y / y_hi * plot_h; };
        static const char *palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

        std::ostringstream svg;
        svg << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                           "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
                           width, height, width, height);
        svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        svg << fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                           "stroke=\"black\"/>\n",
                           left, top, plot_w, plot_h);
        for (int i = 0; i <= 4; ++i)
        {
            const double xv = x_lo + (x_hi - x_lo) * i / 4.0, yv = y_hi * i / 4.0;
            svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(xv),
                               top + plot_h + 16, xv);
            svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6,
                               py(yv) + 4, yv);
        }
        svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">speed (km/h)</text>\n",
                           left + plot_w / 2, height - 16);
        svg << fmt::format("<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">"
                           "mean BPJ-EE (bit/J)</text>\n",
                           top + plot_h / 2, top + plot_h / 2);

        for (std::size_t s = 0; s < names.size(); ++s)
        {
            const char *color = palette[s % std::size(palette)];
            std::string points;
            for (const auto &[x, y] : series[names[s]])
                points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px(x), py(y));
            svg << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color,
                               points);
            const double ly = top + 12 + 16 * double(s);
            svg << fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                               "stroke-width=\"2\"/>\n",
                               width - right + 12, ly - 4, width - right + 32, ly - 4, color);
            svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", width - right + 38, ly,
                               xml_escape(names[s]));
        }
        svg << "</svg>\n";

        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw io_error("cannot write plot to '" + path.string() + "'");
        out << svg.str();
        if (!out.flush())
            throw io_error("failed writing plot to '" + path.string() + "'");
    }
}
