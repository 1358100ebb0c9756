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

#include "bpjee/linkcap.hpp"
#include "bpjee/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace bpjee
{
    namespace
    {
        constexpr double rank_threshold = 1e-12; // relative to the largest singular value

        std::size_t parse_count(std::string_view text)
        {
            while (!text.empty() && text.front() == ' ')
                text.remove_prefix(1);
            while (!text.empty() && text.back() == ' ')
                text.remove_suffix(1);
            std::size_t value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw std::invalid_argument("Mode::parse: '" + std::string(text) + "' is not a count");
            return value;
        }

        // Comma-separated counts inside "NAME(...)"
        std::vector<std::size_t> parse_tuple(std::string_view label, std::string_view prefix)
        {
            std::string_view body = label.substr(prefix.size());
            if (body.size() < 2 || body.front() != '(' || body.back() != ')')
                throw std::invalid_argument("Mode::parse: malformed label '" + std::string(label) + "'");
            body = body.substr(1, body.size() - 2);
            std::vector<std::size_t> values;
            std::size_t start = 0;
            while (start <= body.size())
            {
                const std::size_t comma = body.find(',', start);
                const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
                values.push_back(parse_count(body.substr(start, end - start)));
                start = end + 1;
            }
            return values;
        }

        void check_rate_args(double p_t, double w)
        {
            if (!(w > 0.0))
                throw domain_error("capacity: bandwidth must be positive");
            if (!(p_t >= 0.0))
                throw domain_error("capacity: transmit power must be nonnegative");
        }

        // Eigenvalues of a Hermitian PSD matrix, rounding noise below zero removed
        arma::vec psd_eigenvalues(const arma::cx_mat &x)
        {
            arma::vec values;
            if (!arma::eig_sym(values, arma::cx_mat(0.5 * (x + x.t()))))
                throw numerical_error("Hermitian eigen-decomposition failed");
            if (!values.is_finite())
                throw numerical_error("non-finite eigenvalues");
            return arma::clamp(values, 0.0, arma::datum::inf);
        }

        arma::cx_mat top_right_singular_vectors(const arma::cx_mat &h, std::size_t count)
        {
            arma::cx_mat u, v;
            arma::vec s;
            if (!arma::svd(u, s, v, h))
                throw numerical_error("SVD failed");
            return v.cols(0, count - 1);
        }

        double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }
    }

    // ---- Mode ---------------------------------------------------------------------------------

    Mode Mode::svd(std::size_t m_a, std::size_t n_a, std::size_t user)
    {
        return Mode{Scheme::svd, m_a, 1, {n_a}, {user}};
    }

    Mode Mode::bd(std::size_t m_a, std::size_t n_per_user, std::size_t k_a)
    {
        Mode mode{Scheme::bd, m_a, k_a, std::vector<std::size_t>(k_a, n_per_user), std::vector<std::size_t>(k_a)};
        std::iota(mode.user_indices.begin(), mode.user_indices.end(), std::size_t(0));
        return mode;
    }

    Mode Mode::parse(std::string_view label, std::size_t n)
    {
        if (label == "SISO")
            return svd(1, 1);
        if (label == "SIMO")
            return svd(1, n);
        if (label.starts_with("SU-MIMO"))
        {
            auto values = parse_tuple(label, "SU-MIMO");
            if (values.size() != 2)
                throw std::invalid_argument("Mode::parse: SU-MIMO expects (M_a,N_a)");
            return svd(values[0], values[1]);
        }
        if (label.starts_with("MU-MIMO"))
        {
            auto values = parse_tuple(label, "MU-MIMO");
            if (values.size() != 3)
                throw std::invalid_argument("Mode::parse: MU-MIMO expects (M_a,N_a,K_a)");
            return bd(values[0], values[1], values[2]);
        }
        throw std::invalid_argument("Mode::parse: unknown mode '" + std::string(label) + "'");
    }

    std::size_t Mode::total_rx() const
    {
        return std::accumulate(n_a.begin(), n_a.end(), std::size_t(0));
    }

    std::size_t Mode::n_streams() const
    {
        if (scheme == Scheme::svd)
            return std::min(m_a, n_a.front());
        return total_rx();
    }

    std::size_t Mode::tx_per_user(std::size_t k) const
    {
        const std::size_t others = total_rx() - n_a.at(k);
        return m_a > others ? m_a - others : 0;
    }

    void Mode::validate(std::size_t m, std::size_t n, std::size_t k) const
    {
        const std::string name = label();
        if (m_a < 1 || m_a > m)
            throw infeasible_mode_error(name + ": active transmit antennas must lie in [1, M]");
        if (n_a.size() != k_a || user_indices.size() != k_a || k_a < 1)
            throw infeasible_mode_error(name + ": per-user lists must have K_a entries");
        if (k_a > k)
            throw infeasible_mode_error(name + ": more active users than users in the cell");
        std::set<std::size_t> seen;
        for (std::size_t i = 0; i < k_a; ++i)
        {
            if (n_a[i] < 1 || n_a[i] > n)
                throw infeasible_mode_error(name + ": active receive antennas must lie in [1, N]");
            if (user_indices[i] >= k || !seen.insert(user_indices[i]).second)
                throw infeasible_mode_error(name + ": user indices must be distinct and below K");
        }
        if (scheme == Scheme::svd && k_a != 1)
            throw infeasible_mode_error(name + ": SVD serves exactly one user");
        if (scheme == Scheme::bd)
        {
            if (k_a < 2)
                throw infeasible_mode_error(name + ": BD needs at least two users");
            if (m_a < total_rx())
                throw infeasible_mode_error(name + ": BD needs M_a >= sum of N_a,i");
        }
    }

    std::string Mode::label() const
    {
        if (scheme == Scheme::svd)
        {
            const std::size_t n = n_a.empty() ? 0 : n_a.front();
            if (m_a == 1)
                return n == 1 ? "SISO" : "SIMO";
            return "SU-MIMO(" + std::to_string(m_a) + "," + std::to_string(n) + ")";
        }
        const bool uniform = std::adjacent_find(n_a.begin(), n_a.end(), std::not_equal_to<>()) == n_a.end();
        if (uniform && !n_a.empty())
            return "MU-MIMO(" + std::to_string(m_a) + "," + std::to_string(n_a.front()) + "," + std::to_string(k_a) + ")";
        std::string out = "MU-MIMO(" + std::to_string(m_a) + ";";
        for (std::size_t i = 0; i < n_a.size(); ++i)
            out += (i ? "+" : "") + std::to_string(n_a[i]);
        return out + ")";
    }

    std::vector<ActiveLink> active_links(const ChannelSet &set, const Mode &mode)
    {
        mode.validate(set.m, set.n, set.links.size());
        std::vector<ActiveLink> out;
        out.reserve(mode.k_a);
        for (std::size_t i = 0; i < mode.k_a; ++i)
        {
            const UserLink &link = set.links[mode.user_indices[i]];
            const double amplitude = std::sqrt(link.zeta);
            const arma::uword rows = mode.n_a[i] - 1, cols = mode.m_a - 1;
            out.push_back({amplitude * link.h_delayed.submat(0, 0, rows, cols),
                           amplitude * link.h_current.submat(0, 0, rows, cols),
                           link.stats()});
        }
        return out;
    }

    std::vector<LinkStats> link_stats(std::span<const ActiveLink> links)
    {
        std::vector<LinkStats> out;
        out.reserve(links.size());
        for (const auto &link : links)
            out.push_back(link.stats);
        return out;
    }

    // ---- RateProfile --------------------------------------------------------------------------

    double RateProfile::rate(double p_t, double w, double n0) const
    {
        check_rate_args(p_t, w);
        const double noise = n0 * w;
        double bits = offset;
        for (const auto &t : gains)
            bits += log2_1p(p_t * t.signal / (noise + p_t * t.interference));
        for (const auto &t : losses)
            bits -= log2_1p(p_t * t.signal / (noise + p_t * t.interference));
        return w * bits;
    }

    double RateProfile::d_rate_d_power(double p_t, double w, double n0) const
    {
        check_rate_args(p_t, w);
        const double noise = n0 * w;
        // d/dP log2(1 + u), u = P s / (noise + P q), du/dP = s noise / (noise + P q)^2
        auto slope = [&](const RateTerm &t)
        {
            const double den = noise + p_t * t.interference;
            const double u = p_t * t.signal / den;
            return t.signal * noise / (den * den) / ((1.0 + u) * std::numbers::ln2);
        };
        double d = 0.0;
        for (const auto &t : gains)
            d += slope(t);
        for (const auto &t : losses)
            d -= slope(t);
        return w * d;
    }

    double RateProfile::d_rate_d_bandwidth(double p_t, double w, double n0) const
    {
        check_rate_args(p_t, w);
        const double noise = n0 * w;
        // d/dW [W log2(1 + u)] = log2(1 + u) + W du/dW / ((1 + u) ln 2), du/dW = -P s N0 / (noise + P q)^2
        auto slope = [&](const RateTerm &t)
        {
            const double den = noise + p_t * t.interference;
            const double u = p_t * t.signal / den;
            const double du = -p_t * t.signal * n0 / (den * den);
            return log2_1p(u) + w * du / ((1.0 + u) * std::numbers::ln2);
        };
        double d = offset;
        for (const auto &t : gains)
            d += slope(t);
        for (const auto &t : losses)
            d -= slope(t);
        return d;
    }

    // ---- SVD ----------------------------------------------------------------------------------

    PrecodeResult svd_precode(const arma::cx_mat &h_delayed_scaled, std::size_t n_s)
    {
        if (n_s < 1 || n_s > std::min(h_delayed_scaled.n_rows, h_delayed_scaled.n_cols))
            throw domain_error("svd_precode: stream count must lie in [1, min(N, M)]");
        if (arma::norm(h_delayed_scaled, "fro") == 0.0)
            throw precondition_error("svd_precode: degenerate all-zero channel");
        arma::cx_mat v = top_right_singular_vectors(h_delayed_scaled, n_s);
        return {{v}, {h_delayed_scaled * v}};
    }

    RateProfile svd_capacity_profile(const arma::cx_mat &h_current_scaled, const arma::cx_mat &v, std::size_t n_s)
    {
        if (v.n_rows != h_current_scaled.n_cols || v.n_cols != n_s)
            throw domain_error("svd_capacity: precoder dimensions do not match the channel");
        const arma::vec sv = arma::svd(arma::cx_mat(h_current_scaled * v));
        RateProfile profile;
        for (double s : sv)
            profile.gains.push_back({s * s / double(n_s), 0.0});
        return profile;
    }

    RateProfile estimate_svd_profile(const arma::cx_mat &h_delayed_scaled, std::size_t n_s)
    {
        if (n_s < 1 || n_s > std::min(h_delayed_scaled.n_rows, h_delayed_scaled.n_cols))
            throw domain_error("estimate_svd: stream count must lie in [1, min(N, M)]");
        const arma::vec sv = arma::svd(h_delayed_scaled);
        RateProfile profile;
        for (std::size_t i = 0; i < n_s; ++i)
            profile.gains.push_back({sv(i) * sv(i) / double(n_s), 0.0});
        return profile;
    }

    double svd_capacity(const arma::cx_mat &h_current_scaled, const arma::cx_mat &v, double p_t, double w,
                        double n0, std::size_t n_s)
    {
        check_rate_args(p_t, w);
        return svd_capacity_profile(h_current_scaled, v, n_s).rate(p_t, w, n0);
    }

    double estimate_svd(const arma::cx_mat &h_delayed_scaled, double p_t, double w, double n0, std::size_t n_s)
    {
        check_rate_args(p_t, w);
        return estimate_svd_profile(h_delayed_scaled, n_s).rate(p_t, w, n0);
    }

    // ---- BD -----------------------------------------------------------------------------------

    PrecodeResult bd_precode(std::span<const arma::cx_mat> delayed_scaled, const Mode &mode)
    {
        if (mode.scheme != Scheme::bd)
            throw precondition_error("bd_precode: mode is not BD");
        if (delayed_scaled.size() != mode.k_a)
            throw domain_error("bd_precode: one delayed channel per active user required");
        for (std::size_t k = 0; k < mode.k_a; ++k)
            if (delayed_scaled[k].n_rows != mode.n_a[k] || delayed_scaled[k].n_cols != mode.m_a)
                throw domain_error("bd_precode: channel of user " + std::to_string(k) + " is not N_a,k x M_a");
        if (mode.m_a < mode.total_rx())
            throw infeasible_mode_error(mode.label() + ": M_a smaller than the total receive antennas");

        PrecodeResult out;
        for (std::size_t k = 0; k < mode.k_a; ++k)
        {
            // Stack every other active user's channel
            arma::cx_mat others(mode.total_rx() - mode.n_a[k], mode.m_a);
            arma::uword row = 0;
            for (std::size_t i = 0; i < mode.k_a; ++i)
            {
                if (i == k)
                    continue;
                others.rows(row, row + mode.n_a[i] - 1) = delayed_scaled[i];
                row += mode.n_a[i];
            }

            arma::cx_mat u, v;
            arma::vec s;
            if (!arma::svd(u, s, v, others))
                throw numerical_error("bd_precode: SVD failed");
            const double s_max = s.is_empty() ? 0.0 : s.max();
            const arma::uword rank = s_max > 0.0 ? arma::uword(arma::accu(s > rank_threshold * s_max)) : 0;
            const arma::uword null_dim = mode.m_a - rank;
            if (null_dim < mode.n_a[k])
                throw infeasible_mode_error(mode.label() + ": null space of the other users is too small for user " +
                                            std::to_string(k));

            const arma::cx_mat null_basis = v.cols(rank, mode.m_a - 1);
            const arma::cx_mat rotation = top_right_singular_vectors(delayed_scaled[k] * null_basis, mode.n_a[k]);
            arma::cx_mat t = null_basis * rotation;
            out.eff_delayed.push_back(delayed_scaled[k] * t);
            out.precoders.push_back(std::move(t));
        }
        return out;
    }

    RateProfile bd_capacity_perfect_profile(std::span<const arma::cx_mat> current_scaled,
                                            std::span<const arma::cx_mat> precoders, std::size_t n_s)
    {
        if (current_scaled.size() != precoders.size())
            throw domain_error("bd_capacity_perfect: one precoder per user required");
        RateProfile profile;
        for (std::size_t k = 0; k < current_scaled.size(); ++k)
        {
            if (current_scaled[k].n_cols != precoders[k].n_rows)
                throw domain_error("bd_capacity_perfect: precoder rows must equal M_a");
            const arma::cx_mat eff = current_scaled[k] * precoders[k];
            for (double g : psd_eigenvalues(eff * eff.t()))
                profile.gains.push_back({g / double(n_s), 0.0});
        }
        return profile;
    }

    double bd_capacity_perfect(std::span<const arma::cx_mat> current_scaled, std::span<const arma::cx_mat> precoders,
                               double p_t, double w, double n0, std::size_t n_s)
    {
        check_rate_args(p_t, w);
        return bd_capacity_perfect_profile(current_scaled, precoders, n_s).rate(p_t, w, n0);
    }

    RateProfile bd_capacity_delayed_profile(std::span<const ActiveLink> links, const PrecodeResult &precode,
                                            const Mode &mode)
    {
        if (links.size() != mode.k_a || precode.precoders.size() != mode.k_a)
            throw domain_error("bd_capacity_delayed: one link and one precoder per active user required");
        const double n_s = double(mode.n_streams());

        // log det(I + P/N_s H H^H R^-1) = log det(N0W + P/N_s (A + H H^H)) - log det(N0W + P/N_s A)
        RateProfile profile;
        for (std::size_t k = 0; k < mode.k_a; ++k)
        {
            const ActiveLink &link = links[k];
            if (link.current.n_cols != precode.precoders[k].n_rows)
                throw domain_error("bd_capacity_delayed: precoder rows must equal M_a");

            const arma::cx_mat error = link.current - link.stats.rho * link.delayed;
            arma::cx_mat interference(link.current.n_rows, link.current.n_rows, arma::fill::zeros);
            for (std::size_t i = 0; i < mode.k_a; ++i)
            {
                if (i == k)
                    continue;
                const arma::cx_mat leak = error * precode.precoders[i];
                interference += leak * leak.t();
            }
            const arma::cx_mat eff = link.current * precode.precoders[k];

            for (double c : psd_eigenvalues(interference + eff * eff.t()))
                profile.gains.push_back({c / n_s, 0.0});
            for (double g : psd_eigenvalues(interference))
                profile.losses.push_back({g / n_s, 0.0});
        }
        return profile;
    }

    double bd_capacity_delayed(std::span<const ActiveLink> links, const PrecodeResult &precode, double p_t, double w,
                               double n0, const Mode &mode)
    {
        check_rate_args(p_t, w);
        return bd_capacity_delayed_profile(links, precode, mode).rate(p_t, w, n0);
    }

    namespace
    {
        // sum_{i != k} N_a,i zeta_k eps_k^2 / N_s: per-watt interference power seen by user k
        std::vector<double> interference_per_watt(const Mode &mode, std::span<const LinkStats> links)
        {
            if (links.size() != mode.k_a)
                throw domain_error("BD estimator: one link statistic per active user required");
            const double n_s = double(mode.n_streams());
            std::vector<double> out(mode.k_a);
            for (std::size_t k = 0; k < mode.k_a; ++k)
            {
                const double others = double(mode.total_rx() - mode.n_a[k]);
                out[k] = others * links[k].zeta * links[k].eps_sq / n_s;
            }
            return out;
        }

        void check_bd_estimator_args(std::span<const arma::cx_mat> eff_delayed, const Mode &mode)
        {
            if (mode.scheme != Scheme::bd)
                throw precondition_error("BD estimator: mode is not BD");
            if (eff_delayed.size() != mode.k_a)
                throw domain_error("BD estimator: one effective channel per active user required");
            for (std::size_t k = 0; k < mode.k_a; ++k)
                if (eff_delayed[k].n_rows != mode.n_a[k])
                    throw domain_error("BD estimator: effective channel rows must equal N_a,k");
        }
    }

    double rate_loss_upper(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0)
    {
        check_rate_args(p_t, w);
        const auto per_watt = interference_per_watt(mode, links);
        double bits = 0.0;
        for (std::size_t k = 0; k < mode.k_a; ++k)
            bits += double(mode.n_a[k]) * log2_1p(p_t * per_watt[k] / (n0 * w));
        return w * bits;
    }

    RateProfile estimate_bd_lower_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links)
    {
        check_bd_estimator_args(eff_delayed, mode);
        const auto per_watt = interference_per_watt(mode, links);
        const double n_s = double(mode.n_streams());
        RateProfile profile;
        for (std::size_t k = 0; k < mode.k_a; ++k)
            for (double g : psd_eigenvalues(eff_delayed[k] * eff_delayed[k].t()))
                profile.gains.push_back({g / n_s, per_watt[k]});
        return profile;
    }

    RateProfile estimate_bd_upper_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links)
    {
        RateProfile profile = estimate_bd_lower_profile(eff_delayed, mode, links);
        for (std::size_t k = 0; k < mode.k_a; ++k)
            profile.offset += double(mode.n_a[k]) / double(mode.m_a) * std::numbers::log2e;
        return profile;
    }

    RateProfile estimate_bd_zhang_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links)
    {
        check_bd_estimator_args(eff_delayed, mode);
        const auto per_watt = interference_per_watt(mode, links);
        const double n_s = double(mode.n_streams());
        RateProfile profile;
        for (std::size_t k = 0; k < mode.k_a; ++k)
        {
            for (double g : psd_eigenvalues(eff_delayed[k] * eff_delayed[k].t()))
                profile.gains.push_back({g / n_s, 0.0});
            for (std::size_t i = 0; i < mode.n_a[k]; ++i)
                profile.losses.push_back({per_watt[k], 0.0});
        }
        return profile;
    }

    double estimate_bd_zhang(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links)
    {
        check_rate_args(p_t, w);
        return estimate_bd_zhang_profile(eff_delayed, mode, links).rate(p_t, w, n0);
    }

    double estimate_bd_lower(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links)
    {
        check_rate_args(p_t, w);
        return estimate_bd_lower_profile(eff_delayed, mode, links).rate(p_t, w, n0);
    }

    double estimate_bd_upper(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links)
    {
        check_rate_args(p_t, w);
        return estimate_bd_upper_profile(eff_delayed, mode, links).rate(p_t, w, n0);
    }
}
