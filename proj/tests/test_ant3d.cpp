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
#include "tcsl/antenna.hpp"
#include "tcsl/error.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace tcsl;
using tcsl_test::TempDir;

namespace
{

std::vector<std::string> lines_of(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        out.push_back(line);
    return out;
}

std::string join(const std::vector<std::string> &lines)
{
    std::string s;
    for (const auto &l : lines)
        s += l + "\n";
    return s;
}

std::string encode(const AntennaPattern &p)
{
    std::ostringstream os;
    const AntennaPattern records[] = {p};
    write_ant3d(os, records);
    return os.str();
}

// Parses text and returns the error; fails the test if parsing succeeds
LineError parse_error(const std::string &text)
{
    std::istringstream is(text);
    try
    {
        read_ant3d_records(is);
    }
    catch (const LineError &e)
    {
        return e;
    }
    ADD_FAILURE() << "parse succeeded";
    return LineError(ErrorKind::runtime, 0, "");
}

std::size_t first_data_line(const std::vector<std::string> &lines)
{
    for (std::size_t k = 0; k < lines.size(); ++k)
        if (!lines[k].empty() && lines[k][0] != '#' && lines[k][0] != 'p')
            return k;
    return lines.size();
}

} // namespace

TEST(Ant3d, IsotropicRoundTrip)
{
    TempDir dir;
    const AntennaPattern p = isotropic_pattern(0.0, 1.0);
    write_ant3d(p, dir.file("iso.ant3d"));
    const AntennaPattern q = read_ant3d(dir.file("iso.ant3d"));
    EXPECT_EQ(q.grid_step_deg(), p.grid_step_deg());
    EXPECT_EQ(q.peak_gain_dbi(), p.peak_gain_dbi());
    EXPECT_EQ(q.gain_db_matrix(), p.gain_db_matrix());
    EXPECT_EQ(q.info(), p.info());
}

TEST(Ant3d, ThreeGppRoundTrip)
{
    TempDir dir;
    PatternInfo info;
    info.frequency_ghz = 16.95;
    info.polarization = Polarization::dual;
    info.orientation = {12.5, -3.0};
    info.source = "3gpp-tr38901";
    const AntennaPattern p = synthesize_3gpp({}, 1.0).with_info(info);
    write_ant3d(p, dir.file("elem.ant3d"));
    const AntennaPattern q = read_ant3d(dir.file("elem.ant3d"));
    EXPECT_EQ(q.info(), p.info());
    EXPECT_EQ(q.peak_gain_dbi(), p.peak_gain_dbi());
    ASSERT_EQ(q.gain_db_matrix().size(), p.gain_db_matrix().size());
    for (std::size_t k = 0; k < p.gain_db_matrix().size(); ++k)
        ASSERT_NEAR(q.gain_db_matrix()[k], p.gain_db_matrix()[k], 1e-9);
}

TEST(Ant3d, MultipleRecords)
{
    PatternInfo a, b;
    a.frequency_ghz = 6.75;
    b.frequency_ghz = 16.95;
    const AntennaPattern records[] = {horn_pattern(15.0, 30.0, 30.0, 10.0).with_info(a),
                                      horn_pattern(20.0, 15.0, 30.0, 5.0).with_info(b)};
    std::ostringstream os;
    write_ant3d(os, records);
    std::istringstream is(os.str());
    const auto back = read_ant3d_records(is);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].info().frequency_ghz, 6.75);
    EXPECT_EQ(back[1].info().frequency_ghz, 16.95);
    EXPECT_EQ(back[1].grid_step_deg(), 5.0);

    TempDir dir;
    write_ant3d(records, dir.file("two.ant3d"));
    EXPECT_THROW(read_ant3d(dir.file("two.ant3d")), Error);
}

TEST(Ant3d, IncompleteSphereRejected)
{
    // drop the +90 elevation row: span becomes [-90, 80]
    const AntennaPattern p = isotropic_pattern(0.0, 10.0);
    auto lines = lines_of(encode(p));
    lines.resize(lines.size() - p.n_azimuth());
    const LineError e = parse_error(join(lines));
    EXPECT_NE(std::string(e.what()).find("incomplete sphere"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("80"), std::string::npos) << e.what();
    EXPECT_EQ(e.kind(), ErrorKind::format);
}

TEST(Ant3d, NanRejectedWithLine)
{
    auto lines = lines_of(encode(isotropic_pattern(0.0, 30.0)));
    const std::size_t k = first_data_line(lines) + 3;
    lines[k] = lines[k].substr(0, lines[k].rfind(',')) + ",nan";
    const LineError e = parse_error(join(lines));
    EXPECT_EQ(e.line(), k + 1);
    EXPECT_NE(std::string(e.what()).find("NaN"), std::string::npos) << e.what();
}

TEST(Ant3d, MissingColumnsRejectedWithLine)
{
    auto lines = lines_of(encode(isotropic_pattern(0.0, 30.0)));
    const std::size_t k = first_data_line(lines) + 5;
    lines[k] = lines[k].substr(0, lines[k].rfind(','));
    const LineError e = parse_error(join(lines));
    EXPECT_EQ(e.line(), k + 1);
    EXPECT_NE(std::string(e.what()).find("missing columns"), std::string::npos) << e.what();
}

TEST(Ant3d, UnknownHeaderKeyRejected)
{
    auto lines = lines_of(encode(isotropic_pattern(0.0, 30.0)));
    lines.insert(lines.begin() + 1, "# colour: blue");
    const LineError e = parse_error(join(lines));
    EXPECT_EQ(e.line(), 2u);
}

TEST(Ant3d, MissingHeaderKeyRejected)
{
    auto lines = lines_of(encode(isotropic_pattern(0.0, 30.0)));
    std::erase_if(lines, [](const std::string &l) { return l.rfind("# grid_step_deg", 0) == 0; });
    std::istringstream is(join(lines));
    EXPECT_THROW(read_ant3d_records(is), LineError);
}

TEST(Ant3d, PeakMismatchRejected)
{
    auto lines = lines_of(encode(isotropic_pattern(5.0, 30.0)));
    for (auto &l : lines)
        if (l.rfind("# peak_gain_dbi", 0) == 0)
            l = "# peak_gain_dbi: 6";
    std::istringstream is(join(lines));
    EXPECT_THROW(read_ant3d_records(is), LineError);
}

TEST(Ant3d, MissingFileIsIoError)
{
    try
    {
        read_ant3d("/nonexistent/dir/pattern.ant3d");
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::io);
    }
}

TEST(PlaneCutCsv, ReadsWithHeaderAndComments)
{
    TempDir dir;
    tcsl_test::write_text(dir.file("v.csv"), "# measured\nangle_deg,gain_dbi\n-90,1\n0,20\n90,2\n");
    const PlaneCut v = read_plane_cut_csv(dir.file("v.csv"), CutPlane::vertical);
    EXPECT_EQ(v.samples().size(), 3u);
    EXPECT_EQ(v.max_gain_dbi(), 20.0);
}

TEST(PlaneCutCsv, BadRowsCarryLineNumbers)
{
    TempDir dir;
    tcsl_test::write_text(dir.file("v.csv"), "angle_deg,gain_dbi\n0,1\n95,2\n");
    try
    {
        read_plane_cut_csv(dir.file("v.csv"), CutPlane::vertical);
        FAIL();
    }
    catch (const LineError &e)
    {
        EXPECT_EQ(e.line(), 3u);
    }
    tcsl_test::write_text(dir.file("h.csv"), "0,1\n10,abc\n");
    try
    {
        read_plane_cut_csv(dir.file("h.csv"), CutPlane::horizontal);
        FAIL();
    }
    catch (const LineError &e)
    {
        EXPECT_EQ(e.line(), 2u);
    }
}
