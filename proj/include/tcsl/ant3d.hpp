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

#ifndef tcsl_ant3d_H
#define tcsl_ant3d_H

#include "tcsl/antenna.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tcsl
{

// Ant3D text encoding
//
//   # format_version: 1
//   # frequency_ghz: 16.95            (omitted for frequency-flat patterns)
//   # peak_gain_dbi: 20
//   # polarization: vertical          (vertical | horizontal | dual)
//   # grid_step_deg: 1
//   # source: horn
//   # orientation_yaw_deg: 0          (optional, default 0)
//   # orientation_pitch_deg: 0        (optional, default 0)
//   phi_rad,theta_rad,E_phi_re,E_phi_im,E_theta_re,E_theta_im
//   <one row per cell, theta (elevation) outer, phi inner>
//
// A file may hold several records (one per frequency); a header line after data rows
// starts the next record.
inline constexpr int ant3d_format_version = 1;

void write_ant3d(std::ostream &os, std::span<const AntennaPattern> records);
void write_ant3d(const AntennaPattern &pattern, const std::string &path);
void write_ant3d(std::span<const AntennaPattern> records, const std::string &path);

// Parse errors carry the 1-based line number (LineError, ErrorKind::format)
std::vector<AntennaPattern> read_ant3d_records(std::istream &is);
std::vector<AntennaPattern> read_ant3d_records(const std::string &path);

// Exactly one record expected
AntennaPattern read_ant3d(const std::string &path);

} // namespace tcsl

#endif
