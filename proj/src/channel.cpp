// SPDX-License-Identifier: Apache-2.0
//
// tcsl: time-cluster spatial-lobe channel simulator
// Copyright (C) 2026 The tcsl authors
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

#include "tcsl/channel.hpp"
#include "tcsl/angles.hpp"
#include "tcsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tcsl
{

const char *to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::UMi:
        return "UMi";
    case Scenario::UMa:
        return "UMa";
    case Scenario::RMa:
        return "RMa";
    case Scenario::InF:
        return "InF";
    case Scenario::InH:
        return "InH";
    }
    return "UMi";
}

const char *to_string(Condition c)
{
    return c == Condition::LOS ? "LOS" : "NLOS";
}

std::optional<Scenario> parse_scenario(const std::string &s)
{
    for (Scenario v : {Scenario::UMi, Scenario::UMa, Scenario::RMa, Scenario::InF, Scenario::InH})
        if (s == to_string(v))
            return v;
    return std::nullopt;
}

std::optional<Condition> parse_condition(const std::string &s)
{
    if (s == "LOS")
        return Condition::LOS;
    if (s == "NLOS")
        return Condition::NLOS;
    return std::nullopt;
}

void SimulationConfig::validate() const
{
    auto fail = [](const std::string &m) { throw Error(ErrorKind::config, m); };
    if (!(std::isfinite(frequency_ghz) && frequency_ghz > 0.0))
        fail("frequency_ghz must be > 0");
    if (!(std::isfinite(tr_distance_m) && tr_distance_m >= 1.0))
        fail("tr_distance_m must be >= 1");
    if (n_clusters_max < 1)
        fail("n_clusters_max must be >= 1");
    if (!(std::isfinite(mu_s_ns) && mu_s_ns > 0.0))
        fail("mu_s_ns must be > 0");
    if (!std::isfinite(path_loss_exponent) || path_loss_exponent < 0.0)
        fail("path_loss_exponent must be >= 0");
    if (!(std::isfinite(shadow_sigma_db) && shadow_sigma_db >= 0.0))
        fail("shadow_sigma_db must be >= 0");
    if (n_realizations < 1)
        fail("n_realizations must be >= 1");
    if (max_subpaths < 1)
        fail("max_subpaths must be >= 1");
    if (max_lobes < 1)
        fail("max_lobes must be >= 1");
    if (!(cluster_decay_ns > 0.0 && subpath_decay_ns > 0.0))
        fail("power decay constants must be > 0");
    if (!(cluster_shadow_db >= 0.0 && lobe_zenith_sigma_deg >= 0.0 && subpath_offset_sigma_deg >= 0.0))
        fail("spreads must be >= 0");
    if (!(lobe_zenith_mean_deg >= 0.0 && lobe_zenith_mean_deg <= 180.0))
        fail("lobe_zenith_mean_deg must lie in [0, 180]");
}

namespace
{
struct BandPreset
{
    double frequency_ghz;
    Condition condition;
    double mu_s_ns;
    int max_lobes;
};

// mu_s per band / condition; the lobe count is the per-cell calibration constant
constexpr BandPreset band_presets[] = {
    {16.95, Condition::LOS, 30.0, 4},
    {16.95, Condition::NLOS, 32.0, 6},
    {6.75, Condition::LOS, 18.0, 4},
    {6.75, Condition::NLOS, 22.0, 3},
};

const BandPreset *find_preset(double frequency_ghz, Condition condition)
{
    for (const auto &p : band_presets)
        if (std::fabs(frequency_ghz - p.frequency_ghz) < 1e-9 && condition == p.condition)
            return &p;
    return nullptr;
}
} // namespace

std::optional<double> preset_mu_s(double frequency_ghz, Condition condition)
{
    const BandPreset *p = find_preset(frequency_ghz, condition);
    if (p == nullptr)
        return std::nullopt;
    return p->mu_s_ns;
}

double default_path_loss_exponent(Condition c)
{
    return c == Condition::LOS ? 2.0 : 3.0;
}

double default_shadow_sigma_db(Condition c)
{
    return c == Condition::LOS ? 4.0 : 8.0;
}

SimulationConfig preset_config(double frequency_ghz, Condition condition)
{
    const BandPreset *p = find_preset(frequency_ghz, condition);
    if (p == nullptr)
    {
        std::ostringstream os;
        os << "no mu_s preset for " << frequency_ghz << " GHz " << to_string(condition) << "; set mu_s_ns explicitly";
        throw Error(ErrorKind::config, os.str());
    }
    SimulationConfig cfg;
    cfg.frequency_ghz = frequency_ghz;
    cfg.condition = condition;
    cfg.mu_s_ns = p->mu_s_ns;
    cfg.max_lobes = p->max_lobes;
    cfg.path_loss_exponent = default_path_loss_exponent(condition);
    cfg.shadow_sigma_db = default_shadow_sigma_db(condition);
    return cfg;
}

ClusterSkeleton generate_time_clusters(const SimulationConfig &cfg, Rng &rng)
{
    ClusterSkeleton sk;
    const long n = cfg.fixed_cluster_count ? cfg.n_clusters_max : sample_uniform_int(rng, 1, cfg.n_clusters_max);
    sk.cluster_delay_ns.resize(static_cast<std::size_t>(n));
    sk.cluster_delay_ns[0] = 0.0;
    for (long k = 1; k < n; ++k)
        sk.cluster_delay_ns[k] = sk.cluster_delay_ns[k - 1] + sample_exponential(rng, cfg.mu_s_ns);

    const double intra_mean = cfg.mu_s_ns / 4.0;
    sk.subpath_delay_ns.resize(static_cast<std::size_t>(n));
    for (auto &sub : sk.subpath_delay_ns)
    {
        const long m = sample_uniform_int(rng, 1, cfg.max_subpaths);
        sub.resize(static_cast<std::size_t>(m));
        sub[0] = 0.0;
        for (long k = 1; k < m; ++k)
            sub[k] = sample_exponential(rng, intra_mean);
        std::sort(sub.begin(), sub.end());
    }
    return sk;
}

PowerFractions assign_cluster_powers(const ClusterSkeleton &skeleton, const SimulationConfig &cfg, Rng &rng)
{
    const std::size_t n = skeleton.cluster_delay_ns.size();
    if (n == 0 || skeleton.subpath_delay_ns.size() != n)
        throw Error(ErrorKind::domain, "cluster skeleton is empty or inconsistent");

    PowerFractions pf;
    pf.cluster.resize(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double z_db = sample_normal(rng, 0.0, cfg.cluster_shadow_db);
        pf.cluster[k] = std::exp(-skeleton.cluster_delay_ns[k] / cfg.cluster_decay_ns) * std::pow(10.0, z_db / 10.0);
        total += pf.cluster[k];
    }
    for (double &c : pf.cluster)
        c /= total;

    pf.subpath.resize(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const auto &d = skeleton.subpath_delay_ns[k];
        auto &s = pf.subpath[k];
        s.resize(d.size());
        double sub_total = 0.0;
        for (std::size_t m = 0; m < d.size(); ++m)
        {
            s[m] = std::exp(-d[m] / cfg.subpath_decay_ns);
            sub_total += s[m];
        }
        for (double &v : s)
            v = v / sub_total * pf.cluster[k];
    }

    // fold rounding so that the grand total is 1 to the last bits
    double grand = 0.0;
    for (const auto &s : pf.subpath)
        for (double v : s)
            grand += v;
    for (auto &s : pf.subpath)
        for (double &v : s)
            v /= grand;
    return pf;
}

namespace
{
double clamp_zenith(double z)
{
    return std::clamp(z, 0.0, 180.0);
}
} // namespace

std::vector<std::vector<PathAngles>> generate_spatial_lobes(const ClusterSkeleton &skeleton,
                                                            const SimulationConfig &cfg, Rng &rng)
{
    // Lobes are shared across time clusters: every subpath lands in one of the lobes, so a
    // beam on a lobe collects arrivals from several clusters.
    const long n_lobes = sample_uniform_int(rng, 1, cfg.max_lobes);
    std::vector<PathAngles> centres(static_cast<std::size_t>(n_lobes));
    for (auto &c : centres)
    {
        c.aod_deg = 360.0 * rng.next_uniform53();
        c.zod_deg = clamp_zenith(sample_normal(rng, cfg.lobe_zenith_mean_deg, cfg.lobe_zenith_sigma_deg));
        c.aoa_deg = 360.0 * rng.next_uniform53();
        c.zoa_deg = clamp_zenith(sample_normal(rng, cfg.lobe_zenith_mean_deg, cfg.lobe_zenith_sigma_deg));
    }

    const double s = cfg.subpath_offset_sigma_deg;
    std::vector<std::vector<PathAngles>> out(skeleton.subpath_delay_ns.size());
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        out[k].resize(skeleton.subpath_delay_ns[k].size());
        for (auto &a : out[k])
        {
            const long lobe = sample_uniform_int(rng, 0, n_lobes - 1);
            const PathAngles &c = centres[static_cast<std::size_t>(lobe)];
            a.lobe_index = static_cast<int>(lobe);
            a.aod_deg = wrap_360(c.aod_deg + sample_normal(rng, 0.0, s));
            a.zod_deg = clamp_zenith(c.zod_deg + sample_normal(rng, 0.0, s));
            a.aoa_deg = wrap_360(c.aoa_deg + sample_normal(rng, 0.0, s));
            a.zoa_deg = clamp_zenith(c.zoa_deg + sample_normal(rng, 0.0, s));
        }
    }
    return out;
}

double free_space_path_loss_1m_db(double frequency_ghz)
{
    constexpr double c = 3e8;
    return 20.0 * std::log10(4.0 * std::numbers::pi * frequency_ghz * 1e9 / c);
}

double path_loss_ci(double frequency_ghz, double distance_m, double path_loss_exponent, double shadow_sigma_db,
                    Rng &rng)
{
    if (!(distance_m >= 1.0))
        throw Error(ErrorKind::domain, "path loss: distance must be >= 1 m");
    if (!(frequency_ghz > 0.0))
        throw Error(ErrorKind::domain, "path loss: frequency must be > 0");
    return free_space_path_loss_1m_db(frequency_ghz) + 10.0 * path_loss_exponent * std::log10(distance_m) +
           sample_normal(rng, 0.0, shadow_sigma_db);
}

ChannelRealization generate_realization(const SimulationConfig &cfg, Rng &rng)
{
    cfg.validate();
    ChannelRealization r;
    r.config = cfg;
    r.seed = rng.seed();

    const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
    const PowerFractions pf = assign_cluster_powers(sk, cfg, rng);
    const auto angles = generate_spatial_lobes(sk, cfg, rng);

    const std::size_t n = sk.cluster_delay_ns.size();
    r.n_time_clusters = static_cast<int>(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        r.lobes_per_cluster.push_back(static_cast<int>(sk.subpath_delay_ns[k].size()));
        for (std::size_t m = 0; m < sk.subpath_delay_ns[k].size(); ++m)
        {
            MultipathComponent c;
            c.amplitude = std::sqrt(pf.subpath[k][m]);
            c.delay_ns = sk.cluster_delay_ns[k] + sk.subpath_delay_ns[k][m];
            c.aod_deg = angles[k][m].aod_deg;
            c.zod_deg = angles[k][m].zod_deg;
            c.aoa_deg = angles[k][m].aoa_deg;
            c.zoa_deg = angles[k][m].zoa_deg;
            c.cluster_index = static_cast<int>(k);
            c.lobe_index = angles[k][m].lobe_index;
            r.components.push_back(c);
        }
    }
    for (auto &c : r.components)
        c.phase_rad = 2.0 * std::numbers::pi * rng.next_uniform53();

    r.path_loss_db = path_loss_ci(cfg.frequency_ghz, cfg.tr_distance_m, cfg.path_loss_exponent, cfg.shadow_sigma_db, rng);
    return r;
}

std::string check_realization(const ChannelRealization &r, double power_tol)
{
    if (r.n_time_clusters < 1)
        return "no time clusters";
    if (static_cast<int>(r.lobes_per_cluster.size()) != r.n_time_clusters)
        return "lobe count list does not match cluster count";
    double total = 0.0;
    int prev_cluster = -1;
    double prev_delay = 0.0;
    double prev_cluster_start = -1.0;
    for (const auto &c : r.components)
    {
        if (c.cluster_index < 0 || c.cluster_index >= r.n_time_clusters)
            return "cluster index out of range";
        if (!(c.delay_ns >= 0.0))
            return "negative delay";
        if (!(c.amplitude > 0.0))
            return "non-positive amplitude";
        if (!(c.phase_rad >= 0.0 && c.phase_rad < 2.0 * std::numbers::pi))
            return "phase outside [0, 2 pi)";
        if (c.cluster_index == prev_cluster)
        {
            if (c.delay_ns < prev_delay)
                return "subpath delays not sorted within a cluster";
        }
        else
        {
            if (c.cluster_index != prev_cluster + 1)
                return "clusters not contiguous";
            if (c.delay_ns <= prev_cluster_start && prev_cluster >= 0)
                return "cluster delays not increasing";
            if (prev_cluster < 0 && c.delay_ns != 0.0)
                return "first cluster not at zero excess delay";
            prev_cluster_start = c.delay_ns;
        }
        prev_cluster = c.cluster_index;
        prev_delay = c.delay_ns;
        total += c.power();
    }
    if (prev_cluster + 1 != r.n_time_clusters)
        return "missing cluster components";
    if (std::fabs(total - 1.0) > power_tol)
        return "component powers do not sum to 1";
    return {};
}

} // namespace tcsl
