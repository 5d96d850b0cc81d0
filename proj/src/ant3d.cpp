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
#include "tcsl/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace tcsl
{

using detail::format_double;
using detail::parse_double;
using detail::trim;

namespace
{
constexpr const char *column_header = "phi_rad,theta_rad,E_phi_re,E_phi_im,E_theta_re,E_theta_im";
constexpr double deg2rad = std::numbers::pi / 180.0;
constexpr double node_tol_rad = 1e-9;
constexpr double peak_tol_db = 1e-6;

void write_record(std::ostream &os, const AntennaPattern &p)
{
    const PatternInfo &info = p.info();
    if (info.source.find_first_of("\r\n") != std::string::npos)
        throw Error(ErrorKind::domain, "Ant3D source string must be a single line");

    os << "# format_version: " << ant3d_format_version << '\n';
    if (info.frequency_ghz)
        os << "# frequency_ghz: " << format_double(*info.frequency_ghz) << '\n';
    os << "# peak_gain_dbi: " << format_double(p.peak_gain_dbi()) << '\n';
    os << "# polarization: " << to_string(info.polarization) << '\n';
    os << "# grid_step_deg: " << format_double(p.grid_step_deg()) << '\n';
    os << "# source: " << info.source << '\n';
    os << "# orientation_yaw_deg: " << format_double(info.orientation.yaw_deg) << '\n';
    os << "# orientation_pitch_deg: " << format_double(info.orientation.pitch_deg) << '\n';
    os << column_header << '\n';

    const FieldGrid fg = to_field_components(p);
    std::string line;
    for (const auto &c : fg.cells)
    {
        line.clear();
        line += format_double(c.phi_rad);
        line += ',';
        line += format_double(c.theta_rad);
        line += ',';
        line += format_double(c.e_phi_re);
        line += ',';
        line += format_double(c.e_phi_im);
        line += ',';
        line += format_double(c.e_theta_re);
        line += ',';
        line += format_double(c.e_theta_im);
        line += '\n';
        os << line;
    }
}

struct HeaderEntry
{
    std::string value;
    std::size_t line = 0;
};

struct RawRecord
{
    std::map<std::string, HeaderEntry> header;
    std::size_t header_line = 0; // first header line
    std::vector<std::array<double, 6>> rows;
    std::vector<std::size_t> row_lines;
};

double header_number(const RawRecord &r, const std::string &key, bool required, double fallback)
{
    const auto it = r.header.find(key);
    if (it == r.header.end())
    {
        if (required)
            throw LineError(ErrorKind::format, r.header_line, "malformed header: missing key '" + key + "'");
        return fallback;
    }
    const auto v = parse_double(it->second.value);
    if (!v || !std::isfinite(*v))
        throw LineError(ErrorKind::format, it->second.line,
                        "malformed header: '" + key + "' is not a finite number");
    return *v;
}

AntennaPattern build_record(const RawRecord &r, std::size_t eof_line)
{
    static const char *known[] = {"format_version", "frequency_ghz",       "peak_gain_dbi",        "polarization",
                                  "grid_step_deg",  "source",              "orientation_yaw_deg", "orientation_pitch_deg"};
    for (const auto &[key, entry] : r.header)
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw LineError(ErrorKind::format, entry.line, "malformed header: unknown key '" + key + "'");

    const double version = header_number(r, "format_version", true, 0.0);
    if (version != ant3d_format_version)
        throw LineError(ErrorKind::format, r.header.at("format_version").line,
                        "unsupported format_version " + r.header.at("format_version").value);

    PatternInfo info;
    if (r.header.count("frequency_ghz"))
    {
        const double f = header_number(r, "frequency_ghz", true, 0.0);
        if (!(f > 0.0))
            throw LineError(ErrorKind::format, r.header.at("frequency_ghz").line, "frequency_ghz must be > 0");
        info.frequency_ghz = f;
    }
    const double peak = header_number(r, "peak_gain_dbi", true, 0.0);
    const auto pol = r.header.find("polarization");
    if (pol == r.header.end())
        throw LineError(ErrorKind::format, r.header_line, "malformed header: missing key 'polarization'");
    try
    {
        info.polarization = parse_polarization(pol->second.value);
    }
    catch (const Error &e)
    {
        throw LineError(ErrorKind::format, pol->second.line, e.what());
    }
    if (const auto src = r.header.find("source"); src != r.header.end())
        info.source = src->second.value;
    info.orientation.yaw_deg = header_number(r, "orientation_yaw_deg", false, 0.0);
    info.orientation.pitch_deg = header_number(r, "orientation_pitch_deg", false, 0.0);

    const double step = header_number(r, "grid_step_deg", true, 0.0);
    std::size_t n_el = 0, n_az = 0;
    try
    {
        n_el = elevation_nodes(step);
        n_az = azimuth_nodes(step);
    }
    catch (const Error &e)
    {
        throw LineError(ErrorKind::format, r.header.at("grid_step_deg").line, e.what());
    }

    if (r.rows.empty())
        throw LineError(ErrorKind::format, eof_line, "record has no data rows");
    if (r.rows.front()[1] > -std::numbers::pi / 2.0 + node_tol_rad)
        throw LineError(ErrorKind::format, r.row_lines.front(),
                        "incomplete sphere: elevation starts at " +
                            format_double(r.rows.front()[1] / deg2rad) + " deg instead of -90");

    std::vector<double> gain_dbi(n_el * n_az);
    for (std::size_t k = 0; k < r.rows.size(); ++k)
    {
        const auto &row = r.rows[k];
        const std::size_t line = r.row_lines[k];
        if (k >= gain_dbi.size())
            throw LineError(ErrorKind::format, line, "non-uniform grid: more rows than the grid step allows");
        const std::size_t i = k / n_az, j = k % n_az;
        const double theta = (-90.0 + step * static_cast<double>(i)) * deg2rad;
        const double phi = step * static_cast<double>(j) * deg2rad;
        if (std::fabs(row[1] - theta) > node_tol_rad || std::fabs(row[0] - phi) > node_tol_rad)
            throw LineError(ErrorKind::format, line,
                            "non-uniform grid: expected (phi, theta) = (" + format_double(phi) + ", " +
                                format_double(theta) + ") rad");
        const double g = row[2] * row[2] + row[3] * row[3] + row[4] * row[4] + row[5] * row[5];
        if (!(g > 0.0))
            throw LineError(ErrorKind::format, line, "zero field magnitude, gain undefined");
        gain_dbi[k] = 10.0 * std::log10(g);
    }
    if (r.rows.size() < gain_dbi.size())
    {
        const std::size_t full_rings = r.rows.size() / n_az;
        std::string span = full_rings == 0 ? "no complete elevation ring"
                                           : "elevation span [-90, " +
                                                 format_double(-90.0 + step * static_cast<double>(full_rings - 1)) + "]";
        throw LineError(ErrorKind::format, eof_line, "incomplete sphere: " + span);
    }

    const double max_abs = *std::max_element(gain_dbi.begin(), gain_dbi.end());
    if (std::fabs(max_abs - peak) > peak_tol_db)
        throw LineError(ErrorKind::format, r.header.at("peak_gain_dbi").line,
                        "peak_gain_dbi " + format_double(peak) + " does not match the grid maximum " +
                            format_double(max_abs));
    for (double &g : gain_dbi)
        g -= peak;
    return AntennaPattern::from_normalized(step, std::move(gain_dbi), peak, std::move(info));
}
} // namespace

void write_ant3d(std::ostream &os, std::span<const AntennaPattern> records)
{
    if (records.empty())
        throw Error(ErrorKind::domain, "no Ant3D records to write");
    for (const auto &p : records)
        write_record(os, p);
}

void write_ant3d(std::span<const AntennaPattern> records, const std::string &path)
{
    std::ofstream os(path);
    if (!os)
        throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    write_ant3d(os, records);
    os.flush();
    if (!os)
        throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

void write_ant3d(const AntennaPattern &pattern, const std::string &path)
{
    write_ant3d(std::span<const AntennaPattern>(&pattern, 1), path);
}

std::vector<AntennaPattern> read_ant3d_records(std::istream &is)
{
    std::vector<RawRecord> raw;
    std::string text;
    std::size_t line_no = 0;
    bool in_data = false;
    while (std::getline(is, text))
    {
        ++line_no;
        const std::string_view line = trim(text);
        if (line.empty())
            continue;
        if (line.front() == '#')
        {
            if (raw.empty() || in_data)
            {
                raw.emplace_back();
                raw.back().header_line = line_no;
                in_data = false;
            }
            const std::string_view body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos)
                throw LineError(ErrorKind::format, line_no, "malformed header: expected '# key: value'");
            const std::string key(trim(body.substr(0, colon)));
            const std::string value(trim(body.substr(colon + 1)));
            if (key.empty())
                throw LineError(ErrorKind::format, line_no, "malformed header: empty key");
            if (!raw.back().header.emplace(key, HeaderEntry{value, line_no}).second)
                throw LineError(ErrorKind::format, line_no, "malformed header: duplicate key '" + key + "'");
            continue;
        }
        if (raw.empty())
            throw LineError(ErrorKind::format, line_no, "malformed header: data before any header line");
        in_data = true;
        if (line == column_header)
        {
            if (!raw.back().rows.empty())
                throw LineError(ErrorKind::format, line_no, "column header inside data rows");
            continue;
        }
        const auto fields = detail::split_commas(line);
        if (fields.size() != 6)
            throw LineError(ErrorKind::format, line_no,
                            "missing columns: expected 6 fields, found " + std::to_string(fields.size()));
        std::array<double, 6> row{};
        for (std::size_t c = 0; c < 6; ++c)
        {
            const auto v = parse_double(fields[c]);
            if (!v)
                throw LineError(ErrorKind::format, line_no, "field " + std::to_string(c + 1) + " is not a number");
            if (!std::isfinite(*v))
                throw LineError(ErrorKind::format, line_no, "NaN or infinite value in field " + std::to_string(c + 1));
            row[c] = *v;
        }
        raw.back().rows.push_back(row);
        raw.back().row_lines.push_back(line_no);
    }
    if (raw.empty())
        throw LineError(ErrorKind::format, line_no, "empty Ant3D input");

    std::vector<AntennaPattern> out;
    out.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
    {
        // a truncated record is reported at the line where the next one starts (or end of file)
        const std::size_t end_line = k + 1 < raw.size() ? raw[k + 1].header_line : line_no + 1;
        out.push_back(build_record(raw[k], end_line));
    }
    return out;
}

std::vector<AntennaPattern> read_ant3d_records(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::io, "cannot open Ant3D file '" + path + "'");
    return read_ant3d_records(is);
}

AntennaPattern read_ant3d(const std::string &path)
{
    auto records = read_ant3d_records(path);
    if (records.size() != 1)
        throw Error(ErrorKind::format,
                    "'" + path + "' holds " + std::to_string(records.size()) + " Ant3D records, expected one");
    return std::move(records.front());
}

PlaneCut read_plane_cut_csv(const std::string &path, CutPlane plane)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::io, "cannot open plane-cut file '" + path + "'");
    std::vector<CutSample> samples;
    std::string text;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(is, text))
    {
        ++line_no;
        const std::string_view line = trim(text);
        if (line.empty() || line.front() == '#')
            continue;
        const auto fields = detail::split_commas(line);
        const auto angle = fields.size() == 2 ? parse_double(fields[0]) : std::nullopt;
        const auto gain = fields.size() == 2 ? parse_double(fields[1]) : std::nullopt;
        if (!angle || !gain)
        {
            if (header_allowed && fields.size() == 2 && !angle)
            {
                header_allowed = false; // e.g. "angle_deg,gain_dbi"
                continue;
            }
            throw LineError(ErrorKind::format, line_no, "expected two numeric columns 'angle_deg,gain_dbi'");
        }
        header_allowed = false;
        if (!std::isfinite(*angle) || !std::isfinite(*gain))
            throw LineError(ErrorKind::format, line_no, "non-finite angle or gain");
        if (plane == CutPlane::vertical && (*angle < -90.0 || *angle > 90.0))
            throw LineError(ErrorKind::format, line_no, "vertical cut angle outside [-90, 90]");
        samples.push_back({*angle, *gain});
    }
    if (samples.empty())
        throw Error(ErrorKind::format, "plane-cut file '" + path + "' has no samples");
    return PlaneCut(std::move(samples), plane);
}

} // namespace tcsl
