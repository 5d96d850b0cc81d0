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


#include "tcsl/angles.hpp"
#include "tcsl/channel.hpp"
#include "tcsl/error.hpp"
#include "tcsl/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace tcsl;

namespace
{

SimulationConfig single_path_config()
{
    SimulationConfig cfg;
    cfg.n_clusters_max = 1;
    cfg.max_subpaths = 1;
    return cfg;
}

} // namespace

TEST(Presets, CalibratedBands)
{
    EXPECT_EQ(preset_mu_s(16.95, Condition::LOS), 30.0);
    EXPECT_EQ(preset_mu_s(16.95, Condition::NLOS), 32.0);
    EXPECT_EQ(preset_mu_s(6.75, Condition::LOS), 18.0);
    EXPECT_EQ(preset_mu_s(6.75, Condition::NLOS), 22.0);
    EXPECT_FALSE(preset_mu_s(28.0, Condition::LOS).has_value());
    EXPECT_THROW(preset_config(28.0, Condition::LOS), Error);

    const SimulationConfig c = preset_config(16.95, Condition::NLOS);
    EXPECT_EQ(c.n_clusters_max, 4);
    EXPECT_EQ(c.mu_s_ns, 32.0);
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, ValidateRejectsBadValues)
{
    SimulationConfig c;
    c.n_clusters_max = 0;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.mu_s_ns = -1.0;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.tr_distance_m = 0.5;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.max_lobes = 0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(TimeClusters, SingleClusterAtZero)
{
    SimulationConfig cfg;
    cfg.n_clusters_max = 1;
    Rng rng(4);
    for (int i = 0; i < 100; ++i)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        ASSERT_EQ(sk.cluster_delay_ns.size(), 1u);
        EXPECT_EQ(sk.cluster_delay_ns[0], 0.0);
        EXPECT_EQ(sk.subpath_delay_ns[0].front(), 0.0);
    }
}

TEST(TimeClusters, InterClusterGapMean)
{
    SimulationConfig cfg;
    cfg.mu_s_ns = 30.0;
    Rng rng(99);
    double sum = 0.0;
    long gaps = 0;
    for (int r = 0; r < 100000; ++r)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        for (std::size_t k = 1; k < sk.cluster_delay_ns.size(); ++k)
        {
            sum += sk.cluster_delay_ns[k] - sk.cluster_delay_ns[k - 1];
            ++gaps;
        }
    }
    const double mean = sum / static_cast<double>(gaps);
    EXPECT_GE(mean, 29.7);
    EXPECT_LE(mean, 30.3);
}

TEST(TimeClusters, Deterministic)
{
    SimulationConfig cfg;
    Rng a(17), b(17);
    const ClusterSkeleton x = generate_time_clusters(cfg, a);
    const ClusterSkeleton y = generate_time_clusters(cfg, b);
    EXPECT_EQ(x.cluster_delay_ns, y.cluster_delay_ns);
    EXPECT_EQ(x.subpath_delay_ns, y.subpath_delay_ns);
}

TEST(TimeClusters, CountModes)
{
    SimulationConfig cfg;
    cfg.n_clusters_max = 4;
    Rng rng(3);
    for (int i = 0; i < 200; ++i)
        ASSERT_EQ(generate_time_clusters(cfg, rng).cluster_delay_ns.size(), 4u);

    cfg.fixed_cluster_count = false;
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 2000; ++i)
    {
        const auto n = generate_time_clusters(cfg, rng).cluster_delay_ns.size();
        ASSERT_GE(n, 1u);
        ASSERT_LE(n, 4u);
        ++seen[n];
    }
    for (int n = 1; n <= 4; ++n)
        EXPECT_GT(seen[static_cast<std::size_t>(n)], 350);
}

TEST(TimeClusters, SubpathDelaysSortedFromZero)
{
    SimulationConfig cfg;
    Rng rng(23);
    for (int i = 0; i < 1000; ++i)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        for (const auto &s : sk.subpath_delay_ns)
        {
            ASSERT_GE(s.size(), 1u);
            ASSERT_LE(s.size(), static_cast<std::size_t>(cfg.max_subpaths));
            ASSERT_EQ(s.front(), 0.0);
            ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
        }
        ASSERT_TRUE(std::is_sorted(sk.cluster_delay_ns.begin(), sk.cluster_delay_ns.end()));
    }
}

TEST(ClusterPowers, SinglePathHoldsAllPower)
{
    ClusterSkeleton sk;
    sk.cluster_delay_ns = {0.0};
    sk.subpath_delay_ns = {{0.0}};
    SimulationConfig cfg;
    cfg.cluster_shadow_db = 3.0;
    Rng rng(1);
    const PowerFractions pf = assign_cluster_powers(sk, cfg, rng);
    EXPECT_EQ(pf.cluster[0], 1.0);
    EXPECT_EQ(pf.subpath[0][0], 1.0);
}

TEST(ClusterPowers, EqualDelayEqualPower)
{
    ClusterSkeleton sk;
    sk.cluster_delay_ns = {0.0, 0.0};
    sk.subpath_delay_ns = {{0.0}, {0.0}};
    SimulationConfig cfg;
    cfg.cluster_shadow_db = 0.0;
    Rng rng(1);
    const PowerFractions pf = assign_cluster_powers(sk, cfg, rng);
    EXPECT_EQ(pf.cluster[0], pf.cluster[1]);
    EXPECT_EQ(pf.cluster[0], 0.5);
}

TEST(ClusterPowers, FractionsSumToOne)
{
    SimulationConfig cfg;
    cfg.cluster_shadow_db = 6.0;
    cfg.cluster_decay_ns = 25.0;
    cfg.fixed_cluster_count = false;
    cfg.n_clusters_max = 6;
    cfg.max_subpaths = 8;
    Rng rng(2);
    for (int i = 0; i < 10000; ++i)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        const PowerFractions pf = assign_cluster_powers(sk, cfg, rng);
        double c = 0.0, s = 0.0;
        for (double v : pf.cluster)
            c += v;
        for (const auto &row : pf.subpath)
            for (double v : row)
                s += v;
        ASSERT_NEAR(c, 1.0, 1e-9);
        ASSERT_NEAR(s, 1.0, 1e-9);
    }
}

TEST(ClusterPowers, LaterSubpathsWeaker)
{
    ClusterSkeleton sk;
    sk.cluster_delay_ns = {0.0};
    sk.subpath_delay_ns = {{0.0, 4.0, 9.0}};
    SimulationConfig cfg;
    Rng rng(1);
    const PowerFractions pf = assign_cluster_powers(sk, cfg, rng);
    EXPECT_GT(pf.subpath[0][0], pf.subpath[0][1]);
    EXPECT_GT(pf.subpath[0][1], pf.subpath[0][2]);
}

TEST(SpatialLobes, ZeroSpreadSitsOnLobeCentre)
{
    SimulationConfig cfg;
    cfg.subpath_offset_sigma_deg = 0.0;
    Rng rng(5);
    for (int r = 0; r < 200; ++r)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        const auto angles = generate_spatial_lobes(sk, cfg, rng);
        std::vector<const PathAngles *> first(static_cast<std::size_t>(cfg.max_lobes), nullptr);
        for (const auto &cluster : angles)
            for (const auto &a : cluster)
            {
                auto &f = first[static_cast<std::size_t>(a.lobe_index)];
                if (f == nullptr)
                {
                    f = &a;
                    continue;
                }
                ASSERT_EQ(a.aod_deg, f->aod_deg);
                ASSERT_EQ(a.zod_deg, f->zod_deg);
                ASSERT_EQ(a.aoa_deg, f->aoa_deg);
                ASSERT_EQ(a.zoa_deg, f->zoa_deg);
            }
    }
}

TEST(SpatialLobes, AzimuthWrap)
{
    EXPECT_EQ(wrap_360(359.0 + 2.0), 1.0);
    EXPECT_EQ(wrap_360(-1.0), 359.0);
    EXPECT_EQ(wrap_360(360.0), 0.0);
    EXPECT_EQ(wrap_360(-1e-17), 0.0);
}

TEST(SpatialLobes, AnglesInRange)
{
    SimulationConfig cfg;
    cfg.lobe_zenith_sigma_deg = 80.0; // force clamping
    Rng rng(6);
    for (int r = 0; r < 2000; ++r)
    {
        const ClusterSkeleton sk = generate_time_clusters(cfg, rng);
        for (const auto &cluster : generate_spatial_lobes(sk, cfg, rng))
            for (const auto &a : cluster)
            {
                ASSERT_GE(a.aod_deg, 0.0);
                ASSERT_LT(a.aod_deg, 360.0);
                ASSERT_GE(a.aoa_deg, 0.0);
                ASSERT_LT(a.aoa_deg, 360.0);
                ASSERT_GE(a.zod_deg, 0.0);
                ASSERT_LE(a.zod_deg, 180.0);
                ASSERT_GE(a.zoa_deg, 0.0);
                ASSERT_LE(a.zoa_deg, 180.0);
                ASSERT_LT(a.lobe_index, cfg.max_lobes);
            }
    }
}

TEST(SpatialLobes, CentreAzimuthUniform)
{
    // single lobe, no spread: the component angle is the lobe centre
    SimulationConfig cfg = single_path_config();
    cfg.max_lobes = 1;
    cfg.subpath_offset_sigma_deg = 0.0;
    ClusterSkeleton sk;
    sk.cluster_delay_ns = {0.0};
    sk.subpath_delay_ns = {{0.0}};
    Rng rng(77);
    const int n = 100000;
    std::vector<double> az;
    az.reserve(n);
    for (int i = 0; i < n; ++i)
        az.push_back(generate_spatial_lobes(sk, cfg, rng)[0][0].aod_deg);
    std::sort(az.begin(), az.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double f = az[static_cast<std::size_t>(i)] / 360.0;
        d = std::max({d, (i + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    const double p = kolmogorov_survival(std::sqrt(static_cast<double>(n)) * d);
    EXPECT_GT(p, 0.01) << "D = " << d;
}

TEST(PathLoss, FreeSpaceAtOneMetre)
{
    Rng rng(1);
    const double fspl = 20.0 * std::log10(4.0 * std::numbers::pi * 16.95e9 / 3e8);
    EXPECT_EQ(path_loss_ci(16.95, 1.0, 2.0, 0.0, rng), fspl);
    EXPECT_NEAR(fspl, 57.03, 0.005);
    EXPECT_EQ(free_space_path_loss_1m_db(16.95), fspl);
}

TEST(PathLoss, FreeSpaceSlope)
{
    Rng rng(1);
    const double a = path_loss_ci(6.75, 10.0, 2.0, 0.0, rng);
    const double b = path_loss_ci(6.75, 100.0, 2.0, 0.0, rng);
    const double c = path_loss_ci(6.75, 1000.0, 2.0, 0.0, rng);
    EXPECT_NEAR(b - a, 20.0, 1e-12);
    EXPECT_NEAR(c - b, 20.0, 1e-12);
}

TEST(PathLoss, ShadowingSpread)
{
    Rng rng(8);
    const double base = free_space_path_loss_1m_db(16.95);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = path_loss_ci(16.95, 1.0, 2.0, 8.0, rng) - base;
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double sd = std::sqrt((s2 - n * mean * mean) / (n - 1));
    EXPECT_GE(sd, 7.9);
    EXPECT_LE(sd, 8.1);
}

TEST(PathLoss, RejectsShortDistance)
{
    Rng rng(1);
    EXPECT_THROW(path_loss_ci(16.95, 0.5, 2.0, 0.0, rng), Error);
}

TEST(Realization, BitIdenticalForSameSeed)
{
    const SimulationConfig cfg = preset_config(16.95, Condition::NLOS);
    Rng a(1234), b(1234);
    EXPECT_EQ(generate_realization(cfg, a), generate_realization(cfg, b));
    EXPECT_EQ(a.words_drawn(), b.words_drawn());
}

TEST(Realization, InvariantsOverManySeeds)
{
    for (const auto &cfg : {preset_config(16.95, Condition::LOS), preset_config(6.75, Condition::NLOS)})
        for (std::uint32_t seed = 0; seed < 5000; ++seed)
        {
            Rng rng(seed);
            const ChannelRealization r = generate_realization(cfg, rng);
            ASSERT_EQ(check_realization(r), "") << "seed " << seed;
            ASSERT_EQ(r.seed, seed);
            ASSERT_EQ(r.config, cfg);
            ASSERT_TRUE(std::isfinite(r.path_loss_db));
        }
}

TEST(Realization, SinglePathDegenerate)
{
    const SimulationConfig cfg = single_path_config();
    Rng rng(3);
    const ChannelRealization r = generate_realization(cfg, rng);
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_EQ(r.components[0].power(), 1.0);
    EXPECT_EQ(r.components[0].delay_ns, 0.0);
    EXPECT_EQ(r.n_time_clusters, 1);
    EXPECT_EQ(r.lobes_per_cluster, std::vector<int>{1});
}

TEST(Realization, CheckerFlagsBrokenInvariants)
{
    Rng rng(3);
    ChannelRealization r = generate_realization(SimulationConfig{}, rng);
    ChannelRealization bad = r;
    bad.components[0].amplitude *= 2.0;
    EXPECT_NE(check_realization(bad), "");
    bad = r;
    bad.components.back().cluster_index = r.n_time_clusters;
    EXPECT_NE(check_realization(bad), "");
}
