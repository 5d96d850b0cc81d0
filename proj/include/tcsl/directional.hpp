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

#ifndef tcsl_directional_H
#define tcsl_directional_H

#include "tcsl/antenna.hpp"
#include "tcsl/channel.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace tcsl
{

struct Pointing
{
    double azimuth_deg = 0.0;
    double zenith_deg = 90.0; // [0, 180]

    bool operator==(const Pointing &) const = default;
};

// Non-owning; both patterns must outlive the query
struct DirectionalQuery
{
    Pointing tx_pointing;
    Pointing rx_pointing;
    const AntennaPattern *tx_pattern = nullptr;
    const AntennaPattern *rx_pattern = nullptr;
};

struct PdpTap
{
    double delay_ns = 0.0;
    double power = 0.0; // linear

    bool operator==(const PdpTap &) const = default;
};

struct PowerDelayProfile
{
    std::vector<PdpTap> taps; // sorted by delay
    double total_power = 0.0;
};

// Components closer than this in delay share one PDP tap
inline constexpr double pdp_merge_window_ns = 0.1;

// Boresight of each pattern is steered onto its pointing direction; every component's power
// is scaled by the linear TX gain at (AOD, ZOD) and the linear RX gain at (AOA, ZOA).
std::vector<MultipathComponent> directional_filter(const ChannelRealization &realization, const DirectionalQuery &query);

PowerDelayProfile power_delay_profile(std::span<const MultipathComponent> components);

// Drops taps weaker than dynamic_range_db below the strongest tap (infinite keeps everything)
PowerDelayProfile truncate_pdp(const PowerDelayProfile &pdp, double dynamic_range_db);

// Power-weighted RMS delay spread; throws on zero total power
double rms_delay_spread(const PowerDelayProfile &pdp);

// Cartesian product of TX and RX pointings, TX-major
struct PointingGrid
{
    std::vector<Pointing> tx;
    std::vector<Pointing> rx;

    std::size_t size() const noexcept { return tx.size() * rx.size(); }
};

// HPBW-spaced azimuth ring at the horizon plus rings at +/- HPBW elevation
std::vector<Pointing> horn_sweep_pointings(double hpbw_deg);
PointingGrid default_pointing_grid(double tx_hpbw_deg, double rx_hpbw_deg);

struct SweepOptions
{
    double detect_threshold_db = 40.0; // drop pointings this far below the strongest one
    double tap_dynamic_range_db = std::numeric_limits<double>::infinity(); // per-PDP tap cut

    bool operator==(const SweepOptions &) const = default;
};

struct SweepSample
{
    std::size_t tx_index = 0;
    std::size_t rx_index = 0;
    double power = 0.0; // filtered total power (linear, relative)
    double rms_ds_ns = 0.0;
};

std::vector<SweepSample> directional_ds_sweep(const ChannelRealization &realization, const AntennaPattern &tx_pattern,
                                              const AntennaPattern &rx_pattern, const PointingGrid &grid,
                                              const SweepOptions &options = {});

// One directional delay-spread sample per realization: the RMS DS at the strongest detected
// pointing pair (ties keep the first in TX-major order). nullopt if no pointing is detected.
std::optional<SweepSample> strongest_pointing(std::span<const SweepSample> samples);
std::optional<double> sample_directional_ds(const ChannelRealization &realization, const AntennaPattern &tx_pattern,
                                            const AntennaPattern &rx_pattern, const PointingGrid &grid,
                                            const SweepOptions &options = {});

} // namespace tcsl

#endif
