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

#ifndef tcsl_stats_H
#define tcsl_stats_H

#include <cstddef>
#include <string>
#include <vector>

namespace tcsl
{

// Finite-valued sample; construction rejects NaN / inf
class SampleSet
{
public:
    SampleSet() = default;
    explicit SampleSet(std::vector<double> values, std::string label = {});

    const std::vector<double> &values() const noexcept { return values_; }
    const std::string &label() const noexcept { return label_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

private:
    std::vector<double> values_;
    std::string label_;
};

double sample_mean(const SampleSet &s);
double sample_variance(const SampleSet &s); // n - 1 denominator, 0 for n == 1

struct KsResult
{
    double statistic = 0.0; // sup |F_a - F_b|
    double p_value = 1.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

// Survival function of the Kolmogorov distribution, P(K > lambda)
double kolmogorov_survival(double lambda);

// Two-sample K-S with the asymptotic p-value at effective size n_a n_b / (n_a + n_b)
KsResult ks_two_sample(const SampleSet &a, const SampleSet &b);

struct MomentReport
{
    double mean_a = 0.0, mean_b = 0.0;
    double var_a = 0.0, var_b = 0.0;
    double mean_tolerance = 0.0;
    double var_tolerance = 0.0;
    bool mean_absolute = false; // reference mean indistinguishable from zero
    bool mean_ok = false;
    bool var_ok = false;

    bool pass() const noexcept { return mean_ok && var_ok; }
    std::string describe() const;
};

// b is the reference. Relative tolerance on mean and variance; when |mean_b| is below
// rel_tol * sd_b the mean check switches to the absolute tolerance rel_tol * sd_b.
MomentReport moments_compare(const SampleSet &a, const SampleSet &b, double rel_tol);

struct DelaySpreadStats
{
    double mu_log10 = 0.0;
    double sigma_log10 = 0.0;
    std::size_t n = 0;
};

// Mean and sample std of log10(values); every value must be > 0 and n >= 2
DelaySpreadStats log10_ds_stats(const SampleSet &samples_ns);

struct PositiveSplit
{
    SampleSet kept;
    std::size_t excluded = 0;
};

// Removes zero / negative delay spreads (single-tap profiles) ahead of log statistics
PositiveSplit exclude_nonpositive(const SampleSet &samples);

struct CdfPoint
{
    double value = 0.0;
    double probability = 0.0;
};

// i / n at the i-th order statistic (1-based)
std::vector<CdfPoint> empirical_cdf(const SampleSet &samples);

} // namespace tcsl

#endif
