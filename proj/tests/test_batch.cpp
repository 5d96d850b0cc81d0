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


#include "tcsl/ant3d.hpp"
#include "tcsl/batch.hpp"
#include "tcsl/error.hpp"

#include "test_util.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <unordered_set>

using namespace tcsl;
using tcsl_test::TempDir;

namespace
{

BatchJob small_job(const std::filesystem::path &out, long n, int workers)
{
    BatchJob job;
    job.config = preset_config(16.95, Condition::NLOS);
    job.config.n_realizations = n;
    job.config.seed = 20260101;
    job.output_dir = out.string();
    job.worker_count = workers;
    job.export_formats = {ExportFormat::cir_csv, ExportFormat::pdp_csv, ExportFormat::ds_summary,
                          ExportFormat::cdf_points};
    job.sweep = calibrated_sweep_options();
    return job;
}

void expect_same_results(const std::vector<RealizationResult> &a, const std::vector<RealizationResult> &b)
{
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ASSERT_EQ(a[i].realization, b[i].realization) << i;
        ASSERT_EQ(a[i].omni_rms_ds_ns, b[i].omni_rms_ds_ns) << i;
        ASSERT_EQ(a[i].detected_pointings, b[i].detected_pointings) << i;
        ASSERT_EQ(a[i].directional.has_value(), b[i].directional.has_value()) << i;
        if (a[i].directional)
        {
            ASSERT_EQ(a[i].directional->tx_index, b[i].directional->tx_index);
            ASSERT_EQ(a[i].directional->rx_index, b[i].directional->rx_index);
            ASSERT_EQ(a[i].directional->power, b[i].directional->power);
            ASSERT_EQ(a[i].directional->rms_ds_ns, b[i].directional->rms_ds_ns);
        }
    }
}

void expect_identical_outputs(const BatchManifest &a, const BatchManifest &b, const std::filesystem::path &da,
                              const std::filesystem::path &db)
{
    EXPECT_EQ(a.json, b.json);
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t k = 0; k < a.files.size(); ++k)
    {
        EXPECT_EQ(a.files[k].sha256, b.files[k].sha256);
        EXPECT_EQ(tcsl_test::read_text((da / a.files[k].path).string()),
                  tcsl_test::read_text((db / b.files[k].path).string()));
    }
    EXPECT_EQ(tcsl_test::read_text((da / "manifest.json").string()),
              tcsl_test::read_text((db / "manifest.json").string()));
}

} // namespace

TEST(DeriveSeed, Deterministic)
{
    EXPECT_EQ(derive_seed(17, 4), derive_seed(17, 4));
    EXPECT_NE(derive_seed(17, 4), derive_seed(18, 4));
}

TEST(DeriveSeed, NeighbouringIndicesDiffer)
{
    std::mt19937 pick(99);
    for (int i = 0; i < 1000000; ++i)
    {
        const std::uint32_t b = static_cast<std::uint32_t>(pick());
        ASSERT_NE(derive_seed(b, 0), derive_seed(b, 1)) << "base " << b;
    }
}

TEST(DeriveSeed, NoCollisionsOverAMillionIndices)
{
    for (std::uint32_t base : {0u, 1u, 20260101u})
    {
        std::unordered_set<std::uint32_t> seen;
        seen.reserve(2000000);
        for (std::uint64_t i = 0; i < 1000000; ++i)
            ASSERT_TRUE(seen.insert(derive_seed(base, i)).second) << "base " << base << " index " << i;
    }
}

TEST(DeriveSeed, NoCollisionsOverTenMillionIndices)
{
    std::vector<std::uint32_t> seeds(10000000);
    for (std::uint64_t i = 0; i < seeds.size(); ++i)
        seeds[i] = derive_seed(20260101u, i);
    std::sort(seeds.begin(), seeds.end());
    EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(ResolveAntenna, BuiltInNames)
{
    EXPECT_EQ(resolve_antenna("auto", 16.95).peak_gain_dbi(), 20.0);
    EXPECT_EQ(resolve_antenna("auto", 6.75).peak_gain_dbi(), 15.0);
    EXPECT_EQ(resolve_antenna("isotropic", 16.95).peak_gain_dbi(), 0.0);
    EXPECT_EQ(resolve_antenna("3gpp", 16.95).peak_gain_dbi(), 8.0);
    EXPECT_EQ(resolve_antenna("horn:24.5:10", 16.95).peak_gain_dbi(), 24.5);
    EXPECT_THROW(resolve_antenna("horn:24.5", 16.95), Error);
    EXPECT_THROW(resolve_antenna("auto", 28.0), Error);
}

TEST(ResolveAntenna, Ant3dFile)
{
    TempDir dir;
    write_ant3d(horn_pattern(18.0, 20.0), dir.file("h.ant3d"));
    EXPECT_EQ(resolve_antenna(dir.file("h.ant3d"), 16.95).peak_gain_dbi(), 18.0);
    try
    {
        resolve_antenna(dir.file("missing.ant3d"), 16.95);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::io);
    }
}

TEST(ResolveAntenna, PointingStepFollowsHpbw)
{
    BatchJob job;
    job.config = preset_config(6.75, Condition::LOS);
    const ResolvedAntennas a = resolve_antennas(job);
    EXPECT_EQ(a.grid.tx, horn_sweep_pointings(30.0));
    job.rx_pointing_step_deg = 45.0;
    EXPECT_EQ(resolve_antennas(job).grid.rx, horn_sweep_pointings(45.0));
}

TEST(Simulate, ParallelMatchesSerial)
{
    BatchJob job = small_job("unused", 64, 1);
    const ResolvedAntennas ant = resolve_antennas(job);
    const auto serial = simulate_range_serial(job.config, ant, job.sweep, 10, 64);
    for (int workers : {1, 3, 8})
        expect_same_results(simulate_range(job.config, ant, job.sweep, 10, 64, workers), serial);
}

TEST(Simulate, RealizationUsesDerivedSeed)
{
    BatchJob job = small_job("unused", 4, 1);
    const ResolvedAntennas ant = resolve_antennas(job);
    const auto res = simulate_range_serial(job.config, ant, job.sweep, 5, 2);
    Rng rng(derive_seed(job.config.seed, 6));
    EXPECT_EQ(res[1].realization, generate_realization(job.config, rng));
    EXPECT_EQ(res[1].realization.seed, derive_seed(job.config.seed, 6));
}

TEST(RunBatch, SingleRealizationWorkerInvariant)
{
    TempDir dir;
    const auto a = run_batch(small_job(dir.path() / "w1", 1, 1));
    const auto b = run_batch(small_job(dir.path() / "w8", 1, 8));
    expect_identical_outputs(a, b, dir.path() / "w1", dir.path() / "w8");
}

TEST(RunBatch, HundredRealizationsWorkerInvariant)
{
    TempDir dir;
    const auto a = run_batch(small_job(dir.path() / "w1", 100, 1));
    const auto b = run_batch(small_job(dir.path() / "w4", 100, 4));
    const auto s = run_batch_serial(small_job(dir.path() / "ser", 100, 1));
    expect_identical_outputs(a, b, dir.path() / "w1", dir.path() / "w4");
    expect_identical_outputs(a, s, dir.path() / "w1", dir.path() / "ser");
}

TEST(RunBatch, ManifestChecksumsVerify)
{
    TempDir dir;
    const auto out = dir.path() / "run";
    const auto m = run_batch(small_job(out, 30, 2));
    const auto j = nlohmann::json::parse(tcsl_test::read_text((out / "manifest.json").string()));
    ASSERT_EQ(j["files"].size(), m.files.size());
    std::size_t listed = 0;
    for (const auto &f : j["files"])
    {
        const std::string body = tcsl_test::read_text((out / f["path"].get<std::string>()).string());
        EXPECT_EQ(sha256_hex(body), f["sha256"].get<std::string>());
        EXPECT_EQ(body.size(), f["bytes"].get<std::uint64_t>());
        EXPECT_EQ(f["realizations"][0].get<std::uint64_t>(), 0u);
        EXPECT_EQ(f["realizations"][1].get<std::uint64_t>(), 29u);
        ++listed;
    }
    std::size_t on_disk = 0;
    for (const auto &e : std::filesystem::directory_iterator(out))
        on_disk += e.path().filename() != "manifest.json";
    EXPECT_EQ(listed, on_disk);
    EXPECT_EQ(j["summary"]["n_realizations"].get<std::uint64_t>(), 30u);
}

TEST(RunBatch, ComponentSchema)
{
    TempDir dir;
    const auto out = dir.path() / "run";
    run_batch(small_job(out, 3, 1));
    const std::string comps = tcsl_test::read_text((out / "components.csv").string());
    EXPECT_EQ(comps.substr(0, comps.find('\n')),
              "realization,cluster,lobe,delay_ns,power_db,phase_rad,aod_deg,zod_deg,aoa_deg,zoa_deg");
    const std::string summary = tcsl_test::read_text((out / "summary.csv").string());
    EXPECT_EQ(summary.substr(0, summary.find('\n')), "realization,n_clusters,n_paths,path_loss_db,omni_rms_ds_ns");
}

TEST(RunBatch, MissingAntennaFailsBeforeOutput)
{
    TempDir dir;
    BatchJob job = small_job(dir.path() / "never", 10, 2);
    job.rx_antenna = (dir.path() / "no_such.ant3d").string();
    try
    {
        run_batch(job);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::io);
    }
    EXPECT_FALSE(std::filesystem::exists(dir.path() / "never"));
}

TEST(RunBatch, InvalidConfigFailsBeforeOutput)
{
    TempDir dir;
    BatchJob job = small_job(dir.path() / "never", 10, 2);
    job.config.mu_s_ns = -1.0;
    EXPECT_THROW(run_batch(job), Error);
    job = small_job(dir.path() / "never", 10, 0);
    EXPECT_THROW(run_batch(job), Error);
    EXPECT_FALSE(std::filesystem::exists(dir.path() / "never"));
}

TEST(RunBatch, UnwritableOutputIsIoError)
{
    TempDir dir;
    tcsl_test::write_text(dir.file("plain_file"), "x");
    BatchJob job = small_job(dir.path() / "plain_file" / "sub", 5, 1);
    try
    {
        run_batch(job);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::io);
    }
}

TEST(Summarize, CountsAddUp)
{
    BatchJob job = small_job("unused", 200, 1);
    const auto res = simulate_range(job.config, resolve_antennas(job), job.sweep, 0, 200, 1);
    const BatchSummary s = summarize(res);
    EXPECT_EQ(s.n_realizations, 200u);
    EXPECT_EQ(s.directional_samples + s.excluded_zero_ds + s.undetected, 200u);
    ASSERT_TRUE(s.directional_mu_log10.has_value());
    ASSERT_TRUE(s.omni_mu_log10.has_value());
}

TEST(Sha256, KnownVector)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
