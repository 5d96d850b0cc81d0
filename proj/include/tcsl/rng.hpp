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

#ifndef tcsl_rng_H
#define tcsl_rng_H

#include <array>
#include <cstddef>
#include <cstdint>

namespace tcsl
{

// MT19937 core with a fixed 53-bit float mapping. Every random number used by the
// simulator is derived from this generator so that a seed fully determines a run.
//
// Draw order of the transforms (normative, counted in 32-bit words):
//   uniform53        2 words
//   normal           2 uniform53 per pair of outputs (Box-Muller, second output cached)
//   lognormal        one normal
//   exponential      one uniform53
//   poisson  < 30    Knuth: k+1 uniform53 for a result of k
//   poisson >= 30    PTRS rejection: 2 uniform53 per attempt
//   gamma            Marsaglia-Tsang: per attempt one normal (repeated while 1+c*x <= 0) and
//                    one uniform53; shape < 1 draws gamma(shape+1) first, then one uniform53
class Rng
{
public:
    static constexpr std::size_t state_size = 624;

    explicit Rng(std::uint32_t seed = 5489u);

    std::uint32_t next_u32();

    // ((a >> 5) * 2^26 + (b >> 6)) / 2^53, a drawn first
    double next_uniform53();

    std::uint32_t seed() const noexcept { return seed_; }
    std::size_t index() const noexcept { return index_; }

    // Number of 32-bit words consumed since seeding
    std::uint64_t words_drawn() const noexcept { return words_; }

    // Number of times the state block was regenerated
    std::uint64_t twists() const noexcept { return twists_; }

    const std::array<std::uint32_t, state_size> &state_words() const noexcept { return mt_; }

    // Box-Muller cache, owned by the generator so that normal draws stay part of the state
    bool has_cached_normal() const noexcept { return has_cached_; }

private:
    friend double sample_standard_normal(Rng &rng);

    void twist();

    std::array<std::uint32_t, state_size> mt_{};
    std::size_t index_ = state_size;
    std::uint32_t seed_ = 0;
    std::uint64_t words_ = 0;
    std::uint64_t twists_ = 0;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Pure form of the uniform mapping, exposed for testing
double uniform53_from_words(std::uint32_t a, std::uint32_t b) noexcept;

double sample_uniform(Rng &rng);
double sample_uniform(Rng &rng, double lo, double hi);
double sample_standard_normal(Rng &rng);
double sample_normal(Rng &rng, double mean, double std_dev);
double sample_lognormal(Rng &rng, double mu_log, double sigma_log);
double sample_exponential(Rng &rng, double mean);
std::uint64_t sample_poisson(Rng &rng, double rate);
double sample_gamma(Rng &rng, double shape, double scale);

// Integer uniform on {lo, ..., hi}, one uniform53
long sample_uniform_int(Rng &rng, long lo, long hi);

} // namespace tcsl

#endif
