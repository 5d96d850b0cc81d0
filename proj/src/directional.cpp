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

#include "tcsl/directional.hpp"
#include "tcsl/angles.hpp"
#include "tcsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tcsl
{

namespace
{
OrientedPattern steer(const AntennaPattern &pattern, const Pointing &p)
{
    return apply_orientation(pattern, p.azimuth_deg, zenith_to_elevation(p.zenith_deg));
}

double linear_gain(const OrientedPattern &pattern, double azimuth_deg, double zenith_deg)
{
    return std::pow(10.0, pattern.gain_at(zenith_to_elevation(zenith_deg), azimuth_deg) / 10.0);
}

// Component order sorted by (delay, power) and the tap each component lands in
struct TapLayout
{
    std::vector<std::size_t> order;
    std::vector<std::size_t> tap_of; // indexed by original component index
    std::vector<double> tap_delay;
};

TapLayout tap_layout(std::span<const double> delays, std::span<const double> powers)
{
    TapLayout t;
    t.order.resize(delays.size());
    std::iota(t.order.begin(), t.order.end(), std::size_t{0});
    std::sort(t.order.begin(), t.order.end(), [&](std::size_t a, std::size_t b) {
        if (delays[a] != delays[b])
            return delays[a] < delays[b];
        return powers[a] < powers[b];
    });
    t.tap_of.resize(delays.size());
    for (std::size_t idx : t.order)
    {
        if (t.tap_delay.empty() || delays[idx] - t.tap_delay.back() > pdp_merge_window_ns)
            t.tap_delay.push_back(delays[idx]);
        t.tap_of[idx] = t.tap_delay.size() - 1;
    }
    return t;
}

double rms_from_taps(std::span<const double> delay, std::span<const double> power)
{
    double total = 0.0, first = 0.0;
    std::size_t active = 0;
    for (std::size_t i = 0; i < delay.size(); ++i)
    {
        total += power[i];
        first += power[i] * delay[i];
        active += power[i] > 0.0 ? 1 : 0;
    }
    if (!(total > 0.0))
        throw Error(ErrorKind::runtime, "RMS delay spread of a zero-power profile");
    if (active == 1) // point mass, exactly zero rather than rounding residue
        return 0.0;
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < delay.size(); ++i)
    {
        const double d = delay[i] - mean;
        second += power[i] * d * d;
    }
    return std::sqrt(second / total);
}
} // namespace

std::vector<MultipathComponent> directional_filter(const ChannelRealization &realization, const DirectionalQuery &query)
{
    if (query.tx_pattern == nullptr || query.rx_pattern == nullptr)
        throw Error(ErrorKind::domain, "directional query without antenna patterns");
    const OrientedPattern tx = steer(*query.tx_pattern, query.tx_pointing);
    const OrientedPattern rx = steer(*query.rx_pattern, query.rx_pointing);

    std::vector<MultipathComponent> out = realization.components;
    for (auto &c : out)
    {
        const double g = linear_gain(tx, c.aod_deg, c.zod_deg) * linear_gain(rx, c.aoa_deg, c.zoa_deg);
        c.amplitude *= std::sqrt(g);
    }
    return out;
}

PowerDelayProfile power_delay_profile(std::span<const MultipathComponent> components)
{
    PowerDelayProfile pdp;
    std::vector<double> delays, powers;
    delays.reserve(components.size());
    powers.reserve(components.size());
    for (const auto &c : components)
    {
        delays.push_back(c.delay_ns);
        powers.push_back(c.power());
    }
    const TapLayout layout = tap_layout(delays, powers);
    pdp.taps.resize(layout.tap_delay.size());
    for (std::size_t t = 0; t < layout.tap_delay.size(); ++t)
        pdp.taps[t].delay_ns = layout.tap_delay[t];
    for (std::size_t idx : layout.order)
        pdp.taps[layout.tap_of[idx]].power += powers[idx];
    for (const auto &t : pdp.taps)
        pdp.total_power += t.power;
    return pdp;
}

PowerDelayProfile truncate_pdp(const PowerDelayProfile &pdp, double dynamic_range_db)
{
    if (!(dynamic_range_db >= 0.0))
        throw Error(ErrorKind::domain, "dynamic range must be >= 0 dB");
    double strongest = 0.0;
    for (const auto &t : pdp.taps)
        strongest = std::max(strongest, t.power);
    const double floor = strongest * std::pow(10.0, -dynamic_range_db / 10.0);
    PowerDelayProfile out;
    for (const auto &t : pdp.taps)
        if (t.power >= floor)
        {
            out.taps.push_back(t);
            out.total_power += t.power;
        }
    return out;
}

double rms_delay_spread(const PowerDelayProfile &pdp)
{
    std::vector<double> d, p;
    d.reserve(pdp.taps.size());
    p.reserve(pdp.taps.size());
    for (const auto &t : pdp.taps)
    {
        d.push_back(t.delay_ns);
        p.push_back(t.power);
    }
    return rms_from_taps(d, p);
}

std::vector<Pointing> horn_sweep_pointings(double hpbw_deg)
{
    if (!(hpbw_deg > 0.0 && hpbw_deg <= 180.0))
        throw Error(ErrorKind::domain, "HPBW must lie in (0, 180]");
    const auto n_az = static_cast<std::size_t>(std::ceil(360.0 / hpbw_deg - 1e-9));
    std::vector<Pointing> out;
    for (double zenith : {90.0, 90.0 - hpbw_deg, 90.0 + hpbw_deg})
    {
        if (zenith < 0.0 || zenith > 180.0)
            continue;
        for (std::size_t j = 0; j < n_az; ++j)
            out.push_back({hpbw_deg * static_cast<double>(j), zenith});
    }
    return out;
}

PointingGrid default_pointing_grid(double tx_hpbw_deg, double rx_hpbw_deg)
{
    return {horn_sweep_pointings(tx_hpbw_deg), horn_sweep_pointings(rx_hpbw_deg)};
}

std::vector<SweepSample> directional_ds_sweep(const ChannelRealization &realization, const AntennaPattern &tx_pattern,
                                              const AntennaPattern &rx_pattern, const PointingGrid &grid,
                                              const SweepOptions &options)
{
    const auto &comps = realization.components;
    const std::size_t n = comps.size();
    std::vector<SweepSample> out;
    if (n == 0 || grid.size() == 0)
        return out;

    std::vector<double> delays(n), powers(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        delays[k] = comps[k].delay_ns;
        powers[k] = comps[k].power();
    }
    // the tap grouping depends on delays only, so it is shared by every pointing
    const TapLayout layout = tap_layout(delays, powers);
    const std::size_t n_taps = layout.tap_delay.size();

    auto gains = [&](const AntennaPattern &pattern, const std::vector<Pointing> &pointings, bool departure) {
        std::vector<double> g(pointings.size() * n);
        for (std::size_t i = 0; i < pointings.size(); ++i)
        {
            const OrientedPattern op = steer(pattern, pointings[i]);
            for (std::size_t k = 0; k < n; ++k)
                g[i * n + k] = departure ? linear_gain(op, comps[k].aod_deg, comps[k].zod_deg)
                                         : linear_gain(op, comps[k].aoa_deg, comps[k].zoa_deg);
        }
        return g;
    };
    const std::vector<double> gt = gains(tx_pattern, grid.tx, true);
    const std::vector<double> gr = gains(rx_pattern, grid.rx, false);

    const bool cut_taps = std::isfinite(options.tap_dynamic_range_db);
    const double tap_cut = cut_taps ? std::pow(10.0, -options.tap_dynamic_range_db / 10.0) : 0.0;

    std::vector<SweepSample> all;
    all.reserve(grid.size());
    std::vector<double> tap_power(n_taps);
    double strongest = 0.0;
    for (std::size_t i = 0; i < grid.tx.size(); ++i)
        for (std::size_t j = 0; j < grid.rx.size(); ++j)
        {
            std::fill(tap_power.begin(), tap_power.end(), 0.0);
            for (std::size_t idx : layout.order)
                tap_power[layout.tap_of[idx]] += powers[idx] * (gt[i * n + idx] * gr[j * n + idx]);
            double total = 0.0;
            for (double p : tap_power)
                total += p;
            if (!(total > 0.0))
                continue;
            if (cut_taps)
            {
                const double strongest_tap = *std::max_element(tap_power.begin(), tap_power.end());
                const double tap_floor = strongest_tap * tap_cut;
                for (double &p : tap_power)
                    if (p < tap_floor)
                        p = 0.0;
            }
            all.push_back({i, j, total, rms_from_taps(layout.tap_delay, tap_power)});
            strongest = std::max(strongest, total);
        }

    const double floor = strongest * std::pow(10.0, -options.detect_threshold_db / 10.0);
    for (const auto &s : all)
        if (s.power >= floor)
            out.push_back(s);
    return out;
}

std::optional<SweepSample> strongest_pointing(std::span<const SweepSample> samples)
{
    std::optional<SweepSample> best;
    for (const auto &s : samples)
        if (!best || s.power > best->power)
            best = s;
    return best;
}

std::optional<double> sample_directional_ds(const ChannelRealization &realization, const AntennaPattern &tx_pattern,
                                            const AntennaPattern &rx_pattern, const PointingGrid &grid,
                                            const SweepOptions &options)
{
    const auto best = strongest_pointing(directional_ds_sweep(realization, tx_pattern, rx_pattern, grid, options));
    if (!best)
        return std::nullopt;
    return best->rms_ds_ns;
}

} // namespace tcsl
