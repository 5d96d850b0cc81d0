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

#include "tcsl/stats.hpp"
#include "tcsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tcsl
{

SampleSet::SampleSet(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label))
{
    for (double v : values_)
        if (!std::isfinite(v))
            throw Error(ErrorKind::domain, "sample set '" + label_ + "' contains a non-finite value");
}

namespace
{
void require_non_empty(const SampleSet &s)
{
    if (s.empty())
        throw Error(ErrorKind::domain, "sample set '" + s.label() + "' is empty");
}
} // namespace

double sample_mean(const SampleSet &s)
{
    require_non_empty(s);
    double sum = 0.0;
    for (double v : s.values())
        sum += v;
    return sum / static_cast<double>(s.size());
}

double sample_variance(const SampleSet &s)
{
    require_non_empty(s);
    if (s.size() < 2)
        return 0.0;
    const double m = sample_mean(s);
    double acc = 0.0;
    for (double v : s.values())
        acc += (v - m) * (v - m);
    return acc / static_cast<double>(s.size() - 1);
}

double kolmogorov_survival(double lambda)
{
    if (!(lambda > 0.0))
        return 1.0;
    double q;
    if (lambda < 1.18)
    {
        // theta-function form, converges fast for small lambda
        const double w = std::sqrt(2.0 * std::numbers::pi) / lambda;
        const double f = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int k = 1; k <= 20; ++k)
        {
            const double odd = 2.0 * k - 1.0;
            sum += std::exp(f * odd * odd);
        }
        q = 1.0 - w * sum;
    }
    else
    {
        double sum = 0.0;
        double sign = 1.0;
        for (int k = 1; k <= 100; ++k)
        {
            const double term = std::exp(-2.0 * k * k * lambda * lambda);
            sum += sign * term;
            if (term < 1e-300)
                break;
            sign = -sign;
        }
        q = 2.0 * sum;
    }
    return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(const SampleSet &a, const SampleSet &b)
{
    require_non_empty(a);
    require_non_empty(b);
    std::vector<double> xa = a.values(), xb = b.values();
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());

    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size())
    {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] == x)
            ++i;
        while (j < xb.size() && xb[j] == x)
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }

    KsResult r;
    r.statistic = d;
    r.n_a = xa.size();
    r.n_b = xb.size();
    const double n_eff = na * nb / (na + nb);
    r.p_value = kolmogorov_survival(std::sqrt(n_eff) * d);
    return r;
}

std::string MomentReport::describe() const
{
    std::ostringstream os;
    os << "mean " << mean_a << " vs " << mean_b << " (tol " << mean_tolerance << (mean_absolute ? " abs" : "")
       << ") " << (mean_ok ? "ok" : "FAIL") << "; var " << var_a << " vs " << var_b << " (tol " << var_tolerance
       << ") " << (var_ok ? "ok" : "FAIL");
    return os.str();
}

MomentReport moments_compare(const SampleSet &a, const SampleSet &b, double rel_tol)
{
    if (!(rel_tol >= 0.0))
        throw Error(ErrorKind::domain, "relative tolerance must be >= 0");
    MomentReport r;
    r.mean_a = sample_mean(a);
    r.mean_b = sample_mean(b);
    r.var_a = sample_variance(a);
    r.var_b = sample_variance(b);

    const double sd_b = std::sqrt(r.var_b);
    r.mean_absolute = std::fabs(r.mean_b) < rel_tol * sd_b;
    r.mean_tolerance = r.mean_absolute ? rel_tol * sd_b : rel_tol * std::fabs(r.mean_b);
    r.var_tolerance = rel_tol * std::fabs(r.var_b);
    r.mean_ok = std::fabs(r.mean_a - r.mean_b) <= r.mean_tolerance;
    r.var_ok = std::fabs(r.var_a - r.var_b) <= r.var_tolerance;
    return r;
}

DelaySpreadStats log10_ds_stats(const SampleSet &samples_ns)
{
    if (samples_ns.size() < 2)
        throw Error(ErrorKind::domain, "log10 delay-spread statistics need at least two samples");
    std::vector<double> logs;
    logs.reserve(samples_ns.size());
    for (double v : samples_ns.values())
    {
        if (!(v > 0.0))
            throw Error(ErrorKind::domain, "non-positive delay spread in log10 statistics");
        logs.push_back(std::log10(v));
    }
    const SampleSet ls(std::move(logs), samples_ns.label());
    DelaySpreadStats s;
    s.n = ls.size();
    s.mu_log10 = sample_mean(ls);
    s.sigma_log10 = std::sqrt(sample_variance(ls));
    return s;
}

PositiveSplit exclude_nonpositive(const SampleSet &samples)
{
    std::vector<double> kept;
    kept.reserve(samples.size());
    std::size_t excluded = 0;
    for (double v : samples.values())
    {
        if (v > 0.0)
            kept.push_back(v);
        else
            ++excluded;
    }
    return {SampleSet(std::move(kept), samples.label()), excluded};
}

std::vector<CdfPoint> empirical_cdf(const SampleSet &samples)
{
    require_non_empty(samples);
    std::vector<double> x = samples.values();
    std::sort(x.begin(), x.end());
    std::vector<CdfPoint> out(x.size());
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = {x[i], static_cast<double>(i + 1) / n};
    return out;
}

} // namespace tcsl
