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

#ifndef tcsl_config_H
#define tcsl_config_H

#include "tcsl/channel.hpp"
#include "tcsl/directional.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tcsl
{

enum class ExportFormat
{
    cir_csv,    // components.csv + summary.csv
    pdp_csv,    // pdp.csv (omni and selected directional PDP)
    ds_summary, // directional_ds.csv
    cdf_points, // cdf_directional.csv, cdf_omni.csv
};

const char *to_string(ExportFormat f);
std::optional<ExportFormat> parse_export_format(const std::string &s);

// Everything a batch run needs besides the antenna data itself.
//
// Antenna references are either a file path (Ant3D) or a built-in name:
//   auto                  the band's measurement horn (16.95 GHz: 20 dBi / 15 deg, 6.75 GHz: 15 dBi / 30 deg)
//   isotropic             0 dBi everywhere
//   3gpp                  default TR 38.901 element
//   horn:<gain>:<hpbw>    symmetric horn, e.g. horn:20:15
struct BatchJob
{
    SimulationConfig config;
    std::string tx_antenna = "auto";
    std::string rx_antenna = "auto";
    std::optional<double> tx_pointing_step_deg; // default: horn HPBW, else 30
    std::optional<double> rx_pointing_step_deg;
    std::string output_dir = "tcsl_out";
    int worker_count = 1;
    std::vector<ExportFormat> export_formats = {ExportFormat::cir_csv, ExportFormat::ds_summary};
    SweepOptions sweep;

    void validate() const;
    bool operator==(const BatchJob &) const = default;
};

// Sweep defaults used by the calibrated presets
SweepOptions calibrated_sweep_options();

// `key = value` lines, `#` starts a comment. frequency_ghz / condition select the preset
// (mu_s and calibration constants); every other key overrides it. Errors carry line numbers.
BatchJob parse_config(std::istream &is);
BatchJob parse_config_file(const std::string &path);

// Effective configuration with every key spelled out; parse_config(emit_config(j)) == j
std::string emit_config(const BatchJob &job);

} // namespace tcsl

#endif
