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

#ifndef tcsl_antenna_H
#define tcsl_antenna_H

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tcsl
{

enum class Polarization
{
    vertical,
    horizontal,
    dual,
};

const char *to_string(Polarization p);
Polarization parse_polarization(const std::string &s);

// Mount rotation: boresight points to global azimuth = yaw, elevation = pitch
struct Orientation
{
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;

    bool operator==(const Orientation &) const = default;
};

struct PatternInfo
{
    std::optional<double> frequency_ghz; // absent for frequency-flat patterns
    Polarization polarization = Polarization::vertical;
    Orientation orientation;
    std::string source;

    bool operator==(const PatternInfo &) const = default;
};

// Full-sphere gain pattern on a uniform (elevation, azimuth) grid.
//
// Elevation nodes run from -90 to +90 inclusive, azimuth nodes from 0 to 360 - step (the
// 360 column is the wrap duplicate of 0 and is not stored). The gain matrix is stored
// normalized to its maximum (max == 0 dB); the absolute gain is gain_db + peak_gain_dbi.
// Instances are immutable.
class AntennaPattern
{
public:
    // Builds a pattern from absolute gains in dBi (row-major, elevation outer).
    // The peak is taken from the data and the stored matrix is normalized to it.
    static AntennaPattern from_absolute(double grid_step_deg, std::vector<double> gain_dbi, PatternInfo info = {});

    // Builds a pattern from an already normalized matrix plus explicit peak gain.
    // Throws if the matrix is not normalized (max != 0, or positive / non-finite entries).
    static AntennaPattern from_normalized(double grid_step_deg, std::vector<double> gain_db, double peak_gain_dbi,
                                          PatternInfo info = {});

    double grid_step_deg() const noexcept { return step_; }
    std::size_t n_elevation() const noexcept { return n_el_; }
    std::size_t n_azimuth() const noexcept { return n_az_; }
    double elevation_deg(std::size_t i) const noexcept { return -90.0 + step_ * static_cast<double>(i); }
    double azimuth_deg(std::size_t j) const noexcept { return step_ * static_cast<double>(j); }

    double gain_db(std::size_t i, std::size_t j) const noexcept { return gain_db_[i * n_az_ + j]; }
    double absolute_gain_dbi(std::size_t i, std::size_t j) const noexcept { return gain_db(i, j) + peak_; }
    const std::vector<double> &gain_db_matrix() const noexcept { return gain_db_; }

    double peak_gain_dbi() const noexcept { return peak_; }
    const PatternInfo &info() const noexcept { return info_; }

    AntennaPattern with_peak_gain(double peak_gain_dbi) const;
    AntennaPattern with_info(PatternInfo info) const;

private:
    AntennaPattern() = default;

    double step_ = 1.0;
    std::size_t n_el_ = 0;
    std::size_t n_az_ = 0;
    std::vector<double> gain_db_;
    double peak_ = 0.0;
    PatternInfo info_;
};

// Number of grid nodes for a step, throws unless the step divides 180 and 360 evenly
std::size_t elevation_nodes(double grid_step_deg);
std::size_t azimuth_nodes(double grid_step_deg);

AntennaPattern isotropic_pattern(double gain_dbi = 0.0, double grid_step_deg = 1.0);

// ---------- Plane cuts ----------

enum class CutPlane
{
    vertical,   // angle = elevation in degrees, [-90, 90]
    horizontal, // angle = azimuth in degrees, any real, reduced modulo 360
};

struct CutSample
{
    double angle_deg = 0.0;
    double gain_dbi = 0.0;
};

// Ingested cut: angles deduplicated (first occurrence after a stable sort wins) and strictly increasing
class PlaneCut
{
public:
    PlaneCut(std::vector<CutSample> samples, CutPlane plane);

    CutPlane plane() const noexcept { return plane_; }
    const std::vector<CutSample> &samples() const noexcept { return samples_; }
    double max_gain_dbi() const;

    // Linear interpolation in dB. Vertical cuts hold the end values outside their range,
    // horizontal cuts wrap around 360.
    double gain_at(double angle_deg) const;

private:
    std::vector<CutSample> samples_;
    CutPlane plane_;
};

// Two-column CSV "angle_deg,gain_dbi"; an optional non-numeric header row is skipped
PlaneCut read_plane_cut_csv(const std::string &path, CutPlane plane);

// Multiplication method: G(el, az) = G_H(az) + G_V(el) - G_max, in dBi
AntennaPattern reconstruct_from_cuts(const PlaneCut &vcut, const PlaneCut &hcut, double peak_gain_dbi,
                                     double grid_step_deg = 1.0);

// ---------- 3GPP element pattern ----------

struct ThreeGppParams
{
    double theta_3db_deg = 65.0;
    double phi_3db_deg = 65.0;
    double sla_v_db = 30.0;
    double a_max_db = 30.0;
    double element_peak_gain_dbi = 8.0;

    void validate() const;
};

// Attenuations (<= 0 dB) on the zenith (0..180) / azimuth (-180..180) convention
double three_gpp_vertical_cut_db(double zenith_deg, const ThreeGppParams &p);
double three_gpp_horizontal_cut_db(double azimuth_deg, const ThreeGppParams &p);
double three_gpp_attenuation_db(double zenith_deg, double azimuth_deg, const ThreeGppParams &p);

AntennaPattern synthesize_3gpp(const ThreeGppParams &params = {}, double grid_step_deg = 1.0);

// Directional horn approximated by the 3GPP form with equal beamwidths in both planes
AntennaPattern horn_pattern(double peak_gain_dbi, double hpbw_deg, double front_to_back_db = 30.0,
                            double grid_step_deg = 1.0);

// ---------- Normalization ----------

// Integral of the absolute linear gain over the sphere: midpoint rule with each grid node
// at the centre of its cell, exact cell solid angle. The parallel version reduces rows with OpenMP; the serial one is
// the reference used by the tests.
double spherical_integral(const AntennaPattern &pattern);
double spherical_integral_serial(const AntennaPattern &pattern);

// Rescales the linear gain so the spherical integral equals 4 pi; only the peak changes
AntennaPattern normalize_to_4pi(const AntennaPattern &pattern);

// ---------- Lookup ----------

// Bilinear interpolation on the dB grid, azimuth wraps between the last and first column.
// Elevation is clamped to [-90, 90]. Returns absolute gain in dBi.
double gain_at(const AntennaPattern &pattern, double elevation_deg, double azimuth_deg);

class Rotation
{
public:
    Rotation() = default; // identity

    // Mount rotation Rz(yaw) * Ry(-pitch)
    static Rotation from_yaw_pitch(double yaw_deg, double pitch_deg);

    // (a * b) applies b first
    Rotation operator*(const Rotation &b) const;
    Rotation transposed() const;

    std::array<double, 3> apply(const std::array<double, 3> &v) const;
    bool is_identity() const noexcept { return identity_; }
    const std::array<double, 9> &matrix() const noexcept { return m_; }

private:
    std::array<double, 9> m_{1, 0, 0, 0, 1, 0, 0, 0, 1};
    bool identity_ = true;
};

std::array<double, 3> direction_vector(double elevation_deg, double azimuth_deg);
// Returns {elevation_deg, azimuth_deg in [0, 360)}
std::array<double, 2> direction_angles(const std::array<double, 3> &v);

// Pattern lookup in a rotated frame. Non-owning: the pattern must outlive the view.
class OrientedPattern
{
public:
    OrientedPattern(const AntennaPattern &pattern, Rotation mount);

    // Global direction -> absolute gain in dBi
    double gain_at(double elevation_deg, double azimuth_deg) const;

    const AntennaPattern &pattern() const noexcept { return *pattern_; }
    const Rotation &mount() const noexcept { return mount_; }

private:
    const AntennaPattern *pattern_;
    Rotation mount_;
    Rotation to_local_;
};

// Queries are evaluated in the antenna frame: global direction rotated by -yaw about the
// vertical axis, then by -pitch about the rotated horizontal axis. The pattern's own
// orientation metadata is applied first.
OrientedPattern apply_orientation(const AntennaPattern &pattern, double yaw_deg, double pitch_deg);
OrientedPattern apply_orientation(const OrientedPattern &oriented, double yaw_deg, double pitch_deg);

// ---------- Field components ----------

struct FieldCell
{
    double phi_rad = 0.0;   // azimuth
    double theta_rad = 0.0; // elevation
    double e_phi_re = 0.0;
    double e_phi_im = 0.0;
    double e_theta_re = 0.0;
    double e_theta_im = 0.0;
};

struct FieldGrid
{
    double grid_step_deg = 1.0;
    std::size_t n_elevation = 0;
    std::size_t n_azimuth = 0;
    std::vector<FieldCell> cells; // row-major, elevation outer
};

FieldGrid to_field_components(const AntennaPattern &pattern);

// |E_theta|^2 + |E_phi|^2 -> absolute gain in dBi per cell
std::vector<double> field_gain_dbi(const FieldGrid &grid);

} // namespace tcsl

#endif
