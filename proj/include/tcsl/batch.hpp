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

#ifndef tcsl_batch_H
#define tcsl_batch_H

#include "tcsl/antenna.hpp"
#include "tcsl/channel.hpp"
#include "tcsl/config.hpp"
#include "tcsl/directional.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcsl
{

inline constexpr const char *tcsl_version = "1.0.0";
inline constexpr int manifest_format_version = 1;
inline constexpr int dataset_format_version = 1;

// Avalanche of (mixed base XOR index); injective in index below 2^32 for a fixed base
std::uint32_t derive_seed(std::uint32_t base, std::uint64_t index);

// Antennas resolved from a BatchJob, plus the pointing grid they are swept over
struct ResolvedAntennas
{
    AntennaPattern tx;
    AntennaPattern rx;
    PointingGrid grid;
};

// Built-in names or Ant3D paths (see BatchJob); throws before any output is produced
AntennaPattern resolve_antenna(const std::string &ref, double frequency_ghz);
ResolvedAntennas resolve_antennas(const BatchJob &job);

struct RealizationResult
{
    ChannelRealization realization;
    double omni_rms_ds_ns = 0.0;
    std::size_t detected_pointings = 0;
    std::optional<SweepSample> directional; // strongest detected pointing
};

// Realization index i is drawn from its own generator seeded with derive_seed(cfg.seed, first + i).
// Both versions return identical results for any worker count.
std::vector<RealizationResult> simulate_range(const SimulationConfig &cfg, const ResolvedAntennas &antennas,
                                              const SweepOptions &sweep, std::uint64_t first, std::uint64_t count,
                                              int workers);
std::vector<RealizationResult> simulate_range_serial(const SimulationConfig &cfg, const ResolvedAntennas &antennas,
                                                     const SweepOptions &sweep, std::uint64_t first,
                                                     std::uint64_t count);

struct ManifestEntry
{
    std::string path; // relative to the output directory
    std::uint64_t first_realization = 0;
    std::uint64_t last_realization = 0; // inclusive
    std::uint64_t bytes = 0;
    std::string sha256;
};

struct BatchSummary
{
    std::uint64_t n_realizations = 0;
    std::uint64_t directional_samples = 0;   // realizations with a detected pointing and DS > 0
    std::uint64_t excluded_zero_ds = 0;      // detected but single-tap (DS == 0)
    std::uint64_t undetected = 0;            // no pointing above the detection threshold
    std::optional<double> directional_mu_log10, directional_sigma_log10;
    std::optional<double> omni_mu_log10, omni_sigma_log10;
};

struct BatchManifest
{
    std::vector<ManifestEntry> files;
    BatchSummary summary;
    std::string json; // exact bytes written to manifest.json
};

// Validates and resolves everything, generates in memory, then writes the selected exports and
// manifest.json. No file is created when validation fails.
BatchManifest run_batch(const BatchJob &job);
BatchManifest run_batch_serial(const BatchJob &job); // reference path, single thread

BatchSummary summarize(const std::vector<RealizationResult> &results);

std::string sha256_hex(const std::string &bytes);

} // namespace tcsl

#endif
