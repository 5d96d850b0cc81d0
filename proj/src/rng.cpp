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

#include "tcsl/rng.hpp"
#include "tcsl/error.hpp"

#include <cmath>
#include <numbers>

namespace tcsl
{

namespace
{
constexpr std::size_t mt_m = 397;
constexpr std::uint32_t matrix_a = 0x9908b0dfu;
constexpr std::uint32_t upper_mask = 0x80000000u;
constexpr std::uint32_t lower_mask = 0x7fffffffu;

void require(bool ok, const char *msg)
{
    if (!ok)
        throw Error(ErrorKind::domain, msg);
}
} // namespace

Rng::Rng(std::uint32_t seed) : seed_(seed)
{
    // init_genrand
    mt_[0] = seed;
    for (std::size_t i = 1; i < state_size; ++i)
        mt_[i] = 1812433253u * (mt_[i - 1] ^ (mt_[i - 1] >> 30)) + static_cast<std::uint32_t>(i);
    index_ = state_size;
}

void Rng::twist()
{
    for (std::size_t i = 0; i < state_size; ++i)
    {
        std::uint32_t y = (mt_[i] & upper_mask) | (mt_[(i + 1) % state_size] & lower_mask);
        mt_[i] = mt_[(i + mt_m) % state_size] ^ (y >> 1) ^ ((y & 1u) ? matrix_a : 0u);
    }
    index_ = 0;
    ++twists_;
}

std::uint32_t Rng::next_u32()
{
    if (index_ >= state_size)
        twist();

    std::uint32_t y = mt_[index_++];
    y ^= (y >> 11);
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= (y >> 18);
    ++words_;
    return y;
}

double uniform53_from_words(std::uint32_t a, std::uint32_t b) noexcept
{
    const double hi = static_cast<double>(a >> 5);
    const double lo = static_cast<double>(b >> 6);
    return (hi * 67108864.0 + lo) * (1.0 / 9007199254740992.0);
}

double Rng::next_uniform53()
{
    const std::uint32_t a = next_u32();
    const std::uint32_t b = next_u32();
    return uniform53_from_words(a, b);
}

double sample_uniform(Rng &rng)
{
    return rng.next_uniform53();
}

double sample_uniform(Rng &rng, double lo, double hi)
{
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "uniform: need finite lo <= hi");
    return lo + (hi - lo) * rng.next_uniform53();
}

long sample_uniform_int(Rng &rng, long lo, long hi)
{
    require(lo <= hi, "uniform_int: need lo <= hi");
    const double span = static_cast<double>(hi - lo + 1);
    long k = lo + static_cast<long>(std::floor(rng.next_uniform53() * span));
    return k > hi ? hi : k;
}

double sample_standard_normal(Rng &rng)
{
    if (rng.has_cached_)
    {
        rng.has_cached_ = false;
        return rng.cached_;
    }
    // 1 - u lies in (0, 1], so the log is finite
    const double u1 = rng.next_uniform53();
    const double u2 = rng.next_uniform53();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    rng.cached_ = r * std::sin(phi);
    rng.has_cached_ = true;
    return r * std::cos(phi);
}

double sample_normal(Rng &rng, double mean, double std_dev)
{
    require(std::isfinite(mean), "normal: mean must be finite");
    require(std::isfinite(std_dev) && std_dev >= 0.0, "normal: std must be >= 0");
    return mean + std_dev * sample_standard_normal(rng);
}

double sample_lognormal(Rng &rng, double mu_log, double sigma_log)
{
    return std::exp(sample_normal(rng, mu_log, sigma_log));
}

double sample_exponential(Rng &rng, double mean)
{
    require(std::isfinite(mean) && mean > 0.0, "exponential: mean must be > 0");
    return -mean * std::log1p(-rng.next_uniform53());
}

namespace
{
std::uint64_t poisson_knuth(Rng &rng, double rate)
{
    const double limit = std::exp(-rate);
    std::uint64_t k = 0;
    double p = rng.next_uniform53();
    while (p > limit)
    {
        ++k;
        p *= rng.next_uniform53();
    }
    return k;
}

// Hoermann's transformed rejection with squeeze (PTRS)
std::uint64_t poisson_ptrs(Rng &rng, double rate)
{
    const double slam = std::sqrt(rate);
    const double loglam = std::log(rate);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;)
    {
        const double u = rng.next_uniform53() - 0.5;
        const double v = 1.0 - rng.next_uniform53(); // (0, 1]
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);

        if (us >= 0.07 && v <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -rate + k * loglam - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

double gamma_marsaglia_tsang(Rng &rng, double shape)
{
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x, v;
        do
        {
            x = sample_standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - rng.next_uniform53(); // (0, 1]
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}
} // namespace

std::uint64_t sample_poisson(Rng &rng, double rate)
{
    require(std::isfinite(rate) && rate >= 0.0, "poisson: rate must be >= 0");
    if (rate < 30.0)
        return poisson_knuth(rng, rate);
    return poisson_ptrs(rng, rate);
}

double sample_gamma(Rng &rng, double shape, double scale)
{
    require(std::isfinite(shape) && shape > 0.0, "gamma: shape must be > 0");
    require(std::isfinite(scale) && scale > 0.0, "gamma: scale must be > 0");
    if (shape < 1.0)
    {
        const double g = gamma_marsaglia_tsang(rng, shape + 1.0);
        const double u = 1.0 - rng.next_uniform53();
        return scale * g * std::pow(u, 1.0 / shape);
    }
    return scale * gamma_marsaglia_tsang(rng, shape);
}

} // namespace tcsl
