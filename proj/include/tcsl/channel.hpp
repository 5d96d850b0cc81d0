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

#ifndef tcsl_channel_H
#define tcsl_channel_H

#include "tcsl/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcsl
{

enum class Scenario
{
    UMi,
    UMa,
    RMa,
    InF,
    InH,
};

enum class Condition
{
    LOS,
    NLOS,
};

const char *to_string(Scenario s);
const char *to_string(Condition c);
std::optional<Scenario> parse_scenario(const std::string &s);
std::optional<Condition> parse_condition(const std::string &s);

struct SimulationConfig
{
    double frequency_ghz = 16.95;
    Scenario scenario = Scenario::UMi;
    Condition condition = Condition::LOS;
    double tr_distance_m = 100.0;
    int n_clusters_max = 4;           // N_c
    bool fixed_cluster_count = true;  // N == N_c; false draws N uniform on {1..N_c}
    double mu_s_ns = 30.0;            // mean inter-cluster gap; intra-cluster mean is mu_s / 4
    double path_loss_exponent = 2.0;
    double shadow_sigma_db = 4.0;
    std::uint32_t seed = 1;
    long n_realizations = 1;

    // Calibration constants, tuned once against the directional delay-spread targets and frozen
    int max_subpaths = 4;             // M_n, uniform on {1..max}
    int max_lobes = 4;                // spatial lobes per realization, uniform on {1..max}
    double cluster_decay_ns = 1000.0; // cluster power ~ exp(-tau / decay)
    double subpath_decay_ns = 8.0;    // subpath power ~ exp(-delta / decay)
    double cluster_shadow_db = 0.0;   // per-cluster lognormal shadowing
    double lobe_zenith_mean_deg = 90.0;
    double lobe_zenith_sigma_deg = 15.0;
    double subpath_offset_sigma_deg = 1.0;

    void validate() const;
    bool operator==(const SimulationConfig &) const = default;
};

// mu_s presets per (frequency, condition); nullopt outside the calibrated bands
std::optional<double> preset_mu_s(double frequency_ghz, Condition condition);

// Config with every preset-driven field (mu_s, lobe count, PLE, shadowing) filled for the
// given band and condition. Throws if the band has no preset.
SimulationConfig preset_config(double frequency_ghz, Condition condition);

double default_path_loss_exponent(Condition c);
double default_shadow_sigma_db(Condition c);

struct MultipathComponent
{
    double amplitude = 0.0; // linear voltage magnitude
    double phase_rad = 0.0; // [0, 2 pi)
    double delay_ns = 0.0;
    double aod_deg = 0.0;
    double zod_deg = 90.0;
    double aoa_deg = 0.0;
    double zoa_deg = 90.0;
    int cluster_index = 0;
    int lobe_index = 0;

    double power() const noexcept { return amplitude * amplitude; }
    bool operator==(const MultipathComponent &) const = default;
};

struct ClusterSkeleton
{
    std::vector<double> cluster_delay_ns;             // excess delay of each cluster, first is 0
    std::vector<std::vector<double>> subpath_delay_ns; // intra-cluster excess delays, sorted, first is 0
};

struct PowerFractions
{
    std::vector<double> cluster;              // sums to 1
    std::vector<std::vector<double>> subpath; // absolute fractions, all entries sum to 1
};

struct PathAngles
{
    double aod_deg = 0.0;
    double zod_deg = 90.0;
    double aoa_deg = 0.0;
    double zoa_deg = 90.0;
    int lobe_index = 0;
};

struct ChannelRealization
{
    std::vector<MultipathComponent> components;
    int n_time_clusters = 0;
    std::vector<int> lobes_per_cluster; // M_n, subpaths in each time cluster
    double path_loss_db = 0.0;
    SimulationConfig config;
    std::uint32_t seed = 0;

    bool operator==(const ChannelRealization &) const = default;
};

// Draw order within one realization (normative):
//   cluster count, inter-cluster gaps, per cluster {subpath count, intra delays},
//   cluster shadowing, lobe count, per lobe {departure az/zen, arrival az/zen},
//   per component {lobe, four offsets}, per component phase, path-loss shadowing.
ClusterSkeleton generate_time_clusters(const SimulationConfig &cfg, Rng &rng);
PowerFractions assign_cluster_powers(const ClusterSkeleton &skeleton, const SimulationConfig &cfg, Rng &rng);
std::vector<std::vector<PathAngles>> generate_spatial_lobes(const ClusterSkeleton &skeleton,
                                                            const SimulationConfig &cfg, Rng &rng);

// Close-in free space reference model at d0 = 1 m, c = 3e8 m/s, plus normal(0, sigma) shadowing
double path_loss_ci(double frequency_ghz, double distance_m, double path_loss_exponent, double shadow_sigma_db,
                    Rng &rng);
double free_space_path_loss_1m_db(double frequency_ghz);

ChannelRealization generate_realization(const SimulationConfig &cfg, Rng &rng);

// Checks every structural invariant of a realization, returns an empty string when valid
std::string check_realization(const ChannelRealization &r, double power_tol = 1e-9);

} // namespace tcsl

#endif
