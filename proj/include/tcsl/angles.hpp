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

#ifndef tcsl_angles_H
#define tcsl_angles_H

#include <cmath>
#include <numbers>

namespace tcsl
{

// [0, 360)
inline double wrap_360(double deg)
{
    double a = std::fmod(deg, 360.0);
    if (a < 0.0)
        a += 360.0;
    if (a >= 360.0) // -tiny + 360 rounds up
        a = 0.0;
    return a;
}

// [-180, 180]
inline double wrap_180(double deg)
{
    const double a = wrap_360(deg);
    return a > 180.0 ? a - 360.0 : a;
}

// Exact at multiples of 90 degrees so that axis-aligned rotations stay exact
inline double sin_deg(double deg)
{
    const double a = wrap_360(deg);
    if (a == 0.0 || a == 180.0)
        return 0.0;
    if (a == 90.0)
        return 1.0;
    if (a == 270.0)
        return -1.0;
    return std::sin(a * (std::numbers::pi / 180.0));
}

inline double cos_deg(double deg)
{
    const double a = wrap_360(deg);
    if (a == 90.0 || a == 270.0)
        return 0.0;
    if (a == 0.0)
        return 1.0;
    if (a == 180.0)
        return -1.0;
    return std::cos(a * (std::numbers::pi / 180.0));
}

// Ant3D elevation from zenith and back; the map is its own inverse
inline double zenith_to_elevation(double zenith_deg) { return 90.0 - zenith_deg; }
inline double elevation_to_zenith(double elevation_deg) { return 90.0 - elevation_deg; }

} // namespace tcsl

#endif
