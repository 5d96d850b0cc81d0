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

#include "tcsl/antenna.hpp"
#include "tcsl/angles.hpp"
#include "tcsl/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tcsl
{

const char *to_string(Polarization p)
{
    switch (p)
    {
    case Polarization::vertical:
        return "vertical";
    case Polarization::horizontal:
        return "horizontal";
    case Polarization::dual:
        return "dual";
    }
    return "vertical";
}

Polarization parse_polarization(const std::string &s)
{
    if (s == "vertical")
        return Polarization::vertical;
    if (s == "horizontal")
        return Polarization::horizontal;
    if (s == "dual")
        return Polarization::dual;
    throw Error(ErrorKind::format, "unknown polarization '" + s + "'");
}

namespace
{
std::size_t nodes_over(double span, double step)
{
    if (!(std::isfinite(step) && step > 0.0))
        throw Error(ErrorKind::domain, "grid step must be positive");
    const double n = span / step;
    const double r = std::round(n);
    if (r < 1.0 || std::fabs(n - r) > 1e-9 * n)
        throw Error(ErrorKind::domain, "grid step must divide 180 and 360 evenly");
    return static_cast<std::size_t>(r);
}
} // namespace

std::size_t elevation_nodes(double grid_step_deg)
{
    return nodes_over(180.0, grid_step_deg) + 1;
}

std::size_t azimuth_nodes(double grid_step_deg)
{
    return nodes_over(360.0, grid_step_deg);
}

AntennaPattern AntennaPattern::from_absolute(double grid_step_deg, std::vector<double> gain_dbi, PatternInfo info)
{
    AntennaPattern p;
    p.n_el_ = elevation_nodes(grid_step_deg);
    p.n_az_ = azimuth_nodes(grid_step_deg);
    p.step_ = grid_step_deg;
    if (gain_dbi.size() != p.n_el_ * p.n_az_)
        throw Error(ErrorKind::domain, "gain matrix size does not match the grid");
    double peak = -INFINITY;
    for (double g : gain_dbi)
    {
        if (!std::isfinite(g))
            throw Error(ErrorKind::domain, "gain values must be finite");
        peak = std::max(peak, g);
    }
    for (double &g : gain_dbi)
        g -= peak;
    p.gain_db_ = std::move(gain_dbi);
    p.peak_ = peak;
    p.info_ = std::move(info);
    return p;
}

AntennaPattern AntennaPattern::from_normalized(double grid_step_deg, std::vector<double> gain_db, double peak_gain_dbi,
                                               PatternInfo info)
{
    if (!std::isfinite(peak_gain_dbi))
        throw Error(ErrorKind::domain, "peak gain must be finite");
    AntennaPattern p;
    p.n_el_ = elevation_nodes(grid_step_deg);
    p.n_az_ = azimuth_nodes(grid_step_deg);
    p.step_ = grid_step_deg;
    if (gain_db.size() != p.n_el_ * p.n_az_)
        throw Error(ErrorKind::domain, "gain matrix size does not match the grid");
    double mx = -INFINITY;
    for (double g : gain_db)
    {
        if (!std::isfinite(g))
            throw Error(ErrorKind::domain, "gain values must be finite");
        mx = std::max(mx, g);
    }
    // tolerate serialization noise, then pin the maximum to exactly 0 dB
    if (std::fabs(mx) > 1e-6)
        throw Error(ErrorKind::domain, "gain matrix is not normalized to its peak");
    for (double &g : gain_db)
        g -= mx;
    p.gain_db_ = std::move(gain_db);
    p.peak_ = peak_gain_dbi;
    p.info_ = std::move(info);
    return p;
}

AntennaPattern AntennaPattern::with_peak_gain(double peak_gain_dbi) const
{
    if (!std::isfinite(peak_gain_dbi))
        throw Error(ErrorKind::domain, "peak gain must be finite");
    AntennaPattern p = *this;
    p.peak_ = peak_gain_dbi;
    return p;
}

AntennaPattern AntennaPattern::with_info(PatternInfo info) const
{
    AntennaPattern p = *this;
    p.info_ = std::move(info);
    return p;
}

AntennaPattern isotropic_pattern(double gain_dbi, double grid_step_deg)
{
    const std::size_t n = elevation_nodes(grid_step_deg) * azimuth_nodes(grid_step_deg);
    PatternInfo info;
    info.source = "isotropic";
    return AntennaPattern::from_absolute(grid_step_deg, std::vector<double>(n, gain_dbi), info);
}

// ---------- Plane cuts ----------

PlaneCut::PlaneCut(std::vector<CutSample> samples, CutPlane plane) : plane_(plane)
{
    if (samples.empty())
        throw Error(ErrorKind::domain, "plane cut is empty");
    for (auto &s : samples)
    {
        if (!std::isfinite(s.angle_deg) || !std::isfinite(s.gain_dbi))
            throw Error(ErrorKind::domain, "plane cut contains a non-finite value");
        if (plane == CutPlane::horizontal)
            s.angle_deg = wrap_360(s.angle_deg);
        else if (s.angle_deg < -90.0 || s.angle_deg > 90.0)
            throw Error(ErrorKind::domain, "vertical cut angle outside [-90, 90]");
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const CutSample &a, const CutSample &b) { return a.angle_deg < b.angle_deg; });
    samples_.reserve(samples.size());
    for (const auto &s : samples)
        if (samples_.empty() || s.angle_deg != samples_.back().angle_deg)
            samples_.push_back(s);
}

double PlaneCut::max_gain_dbi() const
{
    double m = -INFINITY;
    for (const auto &s : samples_)
        m = std::max(m, s.gain_dbi);
    return m;
}

double PlaneCut::gain_at(double angle_deg) const
{
    const auto &s = samples_;
    if (s.size() == 1)
        return s.front().gain_dbi;

    if (plane_ == CutPlane::vertical)
    {
        if (angle_deg <= s.front().angle_deg)
            return s.front().gain_dbi;
        if (angle_deg >= s.back().angle_deg)
            return s.back().gain_dbi;
        auto hi = std::upper_bound(s.begin(), s.end(), angle_deg,
                                   [](double a, const CutSample &c) { return a < c.angle_deg; });
        auto lo = hi - 1;
        const double t = (angle_deg - lo->angle_deg) / (hi->angle_deg - lo->angle_deg);
        return lo->gain_dbi + t * (hi->gain_dbi - lo->gain_dbi);
    }

    const double a = wrap_360(angle_deg);
    auto hi = std::upper_bound(s.begin(), s.end(), a, [](double x, const CutSample &c) { return x < c.angle_deg; });
    if (hi != s.begin() && (hi - 1)->angle_deg == a)
        return (hi - 1)->gain_dbi;

    // bracketing samples, wrapping from the last back to the first
    const CutSample &left = (hi == s.begin()) ? s.back() : *(hi - 1);
    const CutSample &right = (hi == s.end()) ? s.front() : *hi;
    double left_angle = left.angle_deg;
    double right_angle = right.angle_deg;
    double x = a;
    if (hi == s.begin())
        left_angle -= 360.0;
    if (hi == s.end())
        right_angle += 360.0;
    const double t = (x - left_angle) / (right_angle - left_angle);
    return left.gain_dbi + t * (right.gain_dbi - left.gain_dbi);
}

AntennaPattern reconstruct_from_cuts(const PlaneCut &vcut, const PlaneCut &hcut, double peak_gain_dbi,
                                     double grid_step_deg)
{
    if (vcut.plane() != CutPlane::vertical || hcut.plane() != CutPlane::horizontal)
        throw Error(ErrorKind::domain, "expected one vertical and one horizontal cut");
    if (!std::isfinite(peak_gain_dbi))
        throw Error(ErrorKind::domain, "peak gain must be finite");
    constexpr double slack_db = 0.01;
    if (vcut.max_gain_dbi() > peak_gain_dbi + slack_db)
        throw Error(ErrorKind::domain, "vertical cut exceeds the declared peak gain");
    if (hcut.max_gain_dbi() > peak_gain_dbi + slack_db)
        throw Error(ErrorKind::domain, "horizontal cut exceeds the declared peak gain");

    const std::size_t n_el = elevation_nodes(grid_step_deg);
    const std::size_t n_az = azimuth_nodes(grid_step_deg);

    std::vector<double> gv(n_el), gh(n_az);
    for (std::size_t i = 0; i < n_el; ++i)
        gv[i] = vcut.gain_at(-90.0 + grid_step_deg * static_cast<double>(i));
    for (std::size_t j = 0; j < n_az; ++j)
        gh[j] = hcut.gain_at(grid_step_deg * static_cast<double>(j));

    std::vector<double> g(n_el * n_az);
    for (std::size_t i = 0; i < n_el; ++i)
        for (std::size_t j = 0; j < n_az; ++j)
            g[i * n_az + j] = gh[j] + gv[i] - peak_gain_dbi;

    PatternInfo info;
    info.source = "plane-cuts";
    return AntennaPattern::from_absolute(grid_step_deg, std::move(g), info);
}

// ---------- 3GPP ----------

void ThreeGppParams::validate() const
{
    if (!(theta_3db_deg > 0.0 && phi_3db_deg > 0.0 && sla_v_db > 0.0 && a_max_db > 0.0 &&
          element_peak_gain_dbi > 0.0))
        throw Error(ErrorKind::domain, "3GPP parameters must be strictly positive");
    if (!(std::isfinite(theta_3db_deg) && std::isfinite(phi_3db_deg) && std::isfinite(sla_v_db) &&
          std::isfinite(a_max_db) && std::isfinite(element_peak_gain_dbi)))
        throw Error(ErrorKind::domain, "3GPP parameters must be finite");
}

double three_gpp_vertical_cut_db(double zenith_deg, const ThreeGppParams &p)
{
    const double x = (zenith_deg - 90.0) / p.theta_3db_deg;
    return -std::min(12.0 * x * x, p.sla_v_db);
}

double three_gpp_horizontal_cut_db(double azimuth_deg, const ThreeGppParams &p)
{
    const double x = wrap_180(azimuth_deg) / p.phi_3db_deg;
    return -std::min(12.0 * x * x, p.a_max_db);
}

double three_gpp_attenuation_db(double zenith_deg, double azimuth_deg, const ThreeGppParams &p)
{
    const double sum = three_gpp_vertical_cut_db(zenith_deg, p) + three_gpp_horizontal_cut_db(azimuth_deg, p);
    return -std::min(-sum, p.a_max_db);
}

AntennaPattern synthesize_3gpp(const ThreeGppParams &params, double grid_step_deg)
{
    params.validate();
    const std::size_t n_el = elevation_nodes(grid_step_deg);
    const std::size_t n_az = azimuth_nodes(grid_step_deg);
    std::vector<double> g(n_el * n_az);
    for (std::size_t i = 0; i < n_el; ++i)
    {
        const double zenith = 90.0 - (-90.0 + grid_step_deg * static_cast<double>(i));
        for (std::size_t j = 0; j < n_az; ++j)
            g[i * n_az + j] = params.element_peak_gain_dbi +
                              three_gpp_attenuation_db(zenith, grid_step_deg * static_cast<double>(j), params);
    }
    PatternInfo info;
    info.source = "3gpp-tr38901";
    return AntennaPattern::from_absolute(grid_step_deg, std::move(g), info);
}

AntennaPattern horn_pattern(double peak_gain_dbi, double hpbw_deg, double front_to_back_db, double grid_step_deg)
{
    ThreeGppParams p;
    p.theta_3db_deg = hpbw_deg;
    p.phi_3db_deg = hpbw_deg;
    p.sla_v_db = front_to_back_db;
    p.a_max_db = front_to_back_db;
    p.element_peak_gain_dbi = peak_gain_dbi;
    auto pattern = synthesize_3gpp(p, grid_step_deg);
    PatternInfo info = pattern.info();
    info.source = "horn";
    return pattern.with_info(info);
}

// ---------- Normalization ----------

namespace
{
// Midpoint rule: every grid node is the centre of a cell one step wide in azimuth and
// elevation. The pole nodes own half-height caps. Band weights are the exact solid angle
// of the cell, so the rule is exact for an isotropic pattern.
double row_sum(const AntennaPattern &pattern, std::size_t i)
{
    const double peak = pattern.peak_gain_dbi();
    double row = 0.0;
    for (std::size_t j = 0; j < pattern.n_azimuth(); ++j)
        row += std::pow(10.0, (pattern.gain_db(i, j) + peak) / 10.0);
    return row;
}

double cell_weight(const AntennaPattern &pattern, std::size_t i)
{
    const double h = pattern.grid_step_deg();
    const double el = pattern.elevation_deg(i);
    const double lo = std::max(-90.0, el - 0.5 * h);
    const double hi = std::min(90.0, el + 0.5 * h);
    return (sin_deg(hi) - sin_deg(lo)) * (h * std::numbers::pi / 180.0);
}
} // namespace

double spherical_integral_serial(const AntennaPattern &pattern)
{
    double total = 0.0;
    for (std::size_t i = 0; i < pattern.n_elevation(); ++i)
        total += cell_weight(pattern, i) * row_sum(pattern, i);
    return total;
}

double spherical_integral(const AntennaPattern &pattern)
{
    const long n_rows = static_cast<long>(pattern.n_elevation());
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (long i = 0; i < n_rows; ++i)
        total += cell_weight(pattern, static_cast<std::size_t>(i)) * row_sum(pattern, static_cast<std::size_t>(i));
    return total;
}

AntennaPattern normalize_to_4pi(const AntennaPattern &pattern)
{
    const double integral = spherical_integral(pattern);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw Error(ErrorKind::runtime, "pattern integral is zero or not finite, cannot normalize");
    const double scale = 4.0 * std::numbers::pi / integral;
    return pattern.with_peak_gain(pattern.peak_gain_dbi() + 10.0 * std::log10(scale));
}

// ---------- Lookup ----------

double gain_at(const AntennaPattern &pattern, double elevation_deg, double azimuth_deg)
{
    const double step = pattern.grid_step_deg();
    const std::size_t n_el = pattern.n_elevation();
    const std::size_t n_az = pattern.n_azimuth();

    const double el = std::clamp(elevation_deg, -90.0, 90.0);
    double fi = (el + 90.0) / step;
    std::size_t i0 = static_cast<std::size_t>(std::floor(fi));
    if (i0 >= n_el - 1)
        i0 = n_el - 2;
    const double ti = fi - static_cast<double>(i0);

    const double az = wrap_360(azimuth_deg);
    const double fj = az / step;
    std::size_t j0 = static_cast<std::size_t>(std::floor(fj));
    if (j0 >= n_az)
        j0 = n_az - 1;
    const double tj = fj - static_cast<double>(j0);
    const std::size_t j1 = (j0 + 1 == n_az) ? 0 : j0 + 1;

    const double g00 = pattern.gain_db(i0, j0);
    const double g01 = pattern.gain_db(i0, j1);
    const double g10 = pattern.gain_db(i0 + 1, j0);
    const double g11 = pattern.gain_db(i0 + 1, j1);
    const double lo = (1.0 - tj) * g00 + tj * g01;
    const double hi = (1.0 - tj) * g10 + tj * g11;
    return (1.0 - ti) * lo + ti * hi + pattern.peak_gain_dbi();
}

Rotation Rotation::from_yaw_pitch(double yaw_deg, double pitch_deg)
{
    Rotation r;
    if (yaw_deg == 0.0 && pitch_deg == 0.0)
        return r;
    const double cy = cos_deg(yaw_deg), sy = sin_deg(yaw_deg);
    const double cp = cos_deg(pitch_deg), sp = sin_deg(pitch_deg);
    // Rz(yaw) * Ry(-pitch)
    r.m_ = {cy * cp, -sy, -cy * sp, //
            sy * cp, cy, -sy * sp,  //
            sp, 0.0, cp};
    r.identity_ = false;
    return r;
}

Rotation Rotation::operator*(const Rotation &b) const
{
    if (identity_)
        return b;
    if (b.identity_)
        return *this;
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += m_[i * 3 + k] * b.m_[k * 3 + j];
            r.m_[i * 3 + j] = s;
        }
    // a rotation followed by its inverse snaps back to the exact identity, so lookups
    // (pole rows in particular, where azimuth is undefined) are restored exactly
    double off = 0.0;
    for (int i = 0; i < 9; ++i)
        off = std::max(off, std::fabs(r.m_[i] - (i % 4 == 0 ? 1.0 : 0.0)));
    if (off <= 1e-12)
        return Rotation();
    r.identity_ = false;
    return r;
}

Rotation Rotation::transposed() const
{
    Rotation r = *this;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m_[i * 3 + j] = m_[j * 3 + i];
    return r;
}

std::array<double, 3> Rotation::apply(const std::array<double, 3> &v) const
{
    if (identity_)
        return v;
    return {m_[0] * v[0] + m_[1] * v[1] + m_[2] * v[2], //
            m_[3] * v[0] + m_[4] * v[1] + m_[5] * v[2], //
            m_[6] * v[0] + m_[7] * v[1] + m_[8] * v[2]};
}

std::array<double, 3> direction_vector(double elevation_deg, double azimuth_deg)
{
    const double ce = cos_deg(elevation_deg);
    return {ce * cos_deg(azimuth_deg), ce * sin_deg(azimuth_deg), sin_deg(elevation_deg)};
}

std::array<double, 2> direction_angles(const std::array<double, 3> &v)
{
    constexpr double rad2deg = 180.0 / std::numbers::pi;
    const double horiz = std::hypot(v[0], v[1]);
    const double el = std::atan2(v[2], horiz) * rad2deg;
    const double az = horiz == 0.0 ? 0.0 : wrap_360(std::atan2(v[1], v[0]) * rad2deg);
    return {el, az};
}

OrientedPattern::OrientedPattern(const AntennaPattern &pattern, Rotation mount)
    : pattern_(&pattern), mount_(mount), to_local_(mount.transposed())
{
}

double OrientedPattern::gain_at(double elevation_deg, double azimuth_deg) const
{
    if (to_local_.is_identity())
        return tcsl::gain_at(*pattern_, elevation_deg, azimuth_deg);
    const auto local = direction_angles(to_local_.apply(direction_vector(elevation_deg, azimuth_deg)));
    return tcsl::gain_at(*pattern_, local[0], local[1]);
}

OrientedPattern apply_orientation(const AntennaPattern &pattern, double yaw_deg, double pitch_deg)
{
    const auto &o = pattern.info().orientation;
    return OrientedPattern(pattern, Rotation::from_yaw_pitch(yaw_deg, pitch_deg) *
                                        Rotation::from_yaw_pitch(o.yaw_deg, o.pitch_deg));
}

OrientedPattern apply_orientation(const OrientedPattern &oriented, double yaw_deg, double pitch_deg)
{
    return OrientedPattern(oriented.pattern(), Rotation::from_yaw_pitch(yaw_deg, pitch_deg) * oriented.mount());
}

// ---------- Field components ----------

FieldGrid to_field_components(const AntennaPattern &pattern)
{
    constexpr double deg2rad = std::numbers::pi / 180.0;
    FieldGrid grid;
    grid.grid_step_deg = pattern.grid_step_deg();
    grid.n_elevation = pattern.n_elevation();
    grid.n_azimuth = pattern.n_azimuth();
    grid.cells.resize(grid.n_elevation * grid.n_azimuth);

    const Polarization pol = pattern.info().polarization;
    for (std::size_t i = 0; i < grid.n_elevation; ++i)
        for (std::size_t j = 0; j < grid.n_azimuth; ++j)
        {
            FieldCell &c = grid.cells[i * grid.n_azimuth + j];
            c.phi_rad = pattern.azimuth_deg(j) * deg2rad;
            c.theta_rad = pattern.elevation_deg(i) * deg2rad;
            const double g = std::pow(10.0, pattern.absolute_gain_dbi(i, j) / 10.0);
            switch (pol)
            {
            case Polarization::vertical:
                c.e_theta_re = std::sqrt(g);
                break;
            case Polarization::horizontal:
                c.e_phi_re = std::sqrt(g);
                break;
            case Polarization::dual:
                c.e_theta_re = std::sqrt(0.5 * g);
                c.e_phi_re = std::sqrt(0.5 * g);
                break;
            }
        }
    return grid;
}

std::vector<double> field_gain_dbi(const FieldGrid &grid)
{
    std::vector<double> out;
    out.reserve(grid.cells.size());
    for (const auto &c : grid.cells)
    {
        const double g = c.e_phi_re * c.e_phi_re + c.e_phi_im * c.e_phi_im + c.e_theta_re * c.e_theta_re +
                         c.e_theta_im * c.e_theta_im;
        out.push_back(10.0 * std::log10(g));
    }
    return out;
}

} // namespace tcsl
