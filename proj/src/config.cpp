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

#include "tcsl/config.hpp"
#include "tcsl/error.hpp"
#include "text.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tcsl
{

using detail::format_double;
using detail::trim;

const char *to_string(ExportFormat f)
{
    switch (f)
    {
    case ExportFormat::cir_csv:
        return "cir_csv";
    case ExportFormat::pdp_csv:
        return "pdp_csv";
    case ExportFormat::ds_summary:
        return "ds_summary";
    case ExportFormat::cdf_points:
        return "cdf_points";
    }
    return "cir_csv";
}

std::optional<ExportFormat> parse_export_format(const std::string &s)
{
    for (auto f : {ExportFormat::cir_csv, ExportFormat::pdp_csv, ExportFormat::ds_summary, ExportFormat::cdf_points})
        if (s == to_string(f))
            return f;
    return std::nullopt;
}

void BatchJob::validate() const
{
    config.validate();
    if (worker_count < 1)
        throw Error(ErrorKind::config, "workers must be >= 1");
    if (tx_antenna.empty() || rx_antenna.empty())
        throw Error(ErrorKind::config, "antenna reference must not be empty");
    if (export_formats.empty())
        throw Error(ErrorKind::config, "export_formats must name at least one format");
    if (output_dir.empty())
        throw Error(ErrorKind::config, "output_dir must not be empty");
    for (const auto &step : {tx_pointing_step_deg, rx_pointing_step_deg})
        if (step && !(*step > 0.0 && *step <= 180.0))
            throw Error(ErrorKind::config, "pointing step must lie in (0, 180]");
    if (!(sweep.detect_threshold_db >= 0.0))
        throw Error(ErrorKind::config, "detect_threshold_db must be >= 0");
    if (!(sweep.tap_dynamic_range_db >= 0.0))
        throw Error(ErrorKind::config, "tap_dynamic_range_db must be >= 0");
}

SweepOptions calibrated_sweep_options()
{
    SweepOptions o;
    o.detect_threshold_db = 40.0;
    return o;
}

namespace
{
struct Entry
{
    std::string value;
    std::size_t line = 0;
};

[[noreturn]] void bad(const Entry &e, const std::string &key, const std::string &expected)
{
    throw LineError(ErrorKind::config, e.line, key + ": expected " + expected + ", got '" + e.value + "'");
}

double as_double(const Entry &e, const std::string &key)
{
    const auto v = detail::parse_double(e.value);
    if (!v || std::isnan(*v))
        bad(e, key, "a number");
    return *v;
}

double as_finite(const Entry &e, const std::string &key)
{
    const double v = as_double(e, key);
    if (!std::isfinite(v))
        bad(e, key, "a finite number");
    return v;
}

template <typename Int> Int as_integer(const Entry &e, const std::string &key)
{
    const auto v = detail::parse_integer<Int>(e.value);
    if (!v)
        bad(e, key, "an integer");
    return *v;
}

bool as_bool(const Entry &e, const std::string &key)
{
    if (e.value == "true")
        return true;
    if (e.value == "false")
        return false;
    bad(e, key, "true or false");
}

using Setter = std::function<void(BatchJob &, const Entry &, const std::string &)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        // frequency_ghz and condition are consumed before the preset is chosen
        {"frequency_ghz", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.frequency_ghz = as_finite(e, k); }},
        {"condition",
         [](BatchJob &j, const Entry &e, const std::string &k) {
             const auto c = parse_condition(e.value);
             if (!c)
                 bad(e, k, "LOS or NLOS");
             j.config.condition = *c;
         }},
        {"scenario",
         [](BatchJob &j, const Entry &e, const std::string &k) {
             const auto s = parse_scenario(e.value);
             if (!s)
                 bad(e, k, "one of UMi, UMa, RMa, InF, InH");
             j.config.scenario = *s;
         }},
        {"tr_distance_m", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.tr_distance_m = as_finite(e, k); }},
        {"n_clusters_max", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.n_clusters_max = as_integer<int>(e, k); }},
        {"fixed_cluster_count", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.fixed_cluster_count = as_bool(e, k); }},
        {"mu_s_ns", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.mu_s_ns = as_finite(e, k); }},
        {"path_loss_exponent", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.path_loss_exponent = as_finite(e, k); }},
        {"shadow_sigma_db", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.shadow_sigma_db = as_finite(e, k); }},
        {"seed", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.seed = as_integer<std::uint32_t>(e, k); }},
        {"n_realizations", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.n_realizations = as_integer<long>(e, k); }},
        {"max_subpaths", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.max_subpaths = as_integer<int>(e, k); }},
        {"max_lobes", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.max_lobes = as_integer<int>(e, k); }},
        {"cluster_decay_ns", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.cluster_decay_ns = as_finite(e, k); }},
        {"subpath_decay_ns", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.subpath_decay_ns = as_finite(e, k); }},
        {"cluster_shadow_db", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.cluster_shadow_db = as_finite(e, k); }},
        {"lobe_zenith_mean_deg", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.lobe_zenith_mean_deg = as_finite(e, k); }},
        {"lobe_zenith_sigma_deg", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.lobe_zenith_sigma_deg = as_finite(e, k); }},
        {"subpath_offset_sigma_deg", [](BatchJob &j, const Entry &e, const std::string &k) { j.config.subpath_offset_sigma_deg = as_finite(e, k); }},
        {"tx_antenna", [](BatchJob &j, const Entry &e, const std::string &) { j.tx_antenna = e.value; }},
        {"rx_antenna", [](BatchJob &j, const Entry &e, const std::string &) { j.rx_antenna = e.value; }},
        {"tx_pointing_step_deg", [](BatchJob &j, const Entry &e, const std::string &k) { j.tx_pointing_step_deg = as_finite(e, k); }},
        {"rx_pointing_step_deg", [](BatchJob &j, const Entry &e, const std::string &k) { j.rx_pointing_step_deg = as_finite(e, k); }},
        {"output_dir", [](BatchJob &j, const Entry &e, const std::string &) { j.output_dir = e.value; }},
        {"workers", [](BatchJob &j, const Entry &e, const std::string &k) { j.worker_count = as_integer<int>(e, k); }},
        {"export_formats",
         [](BatchJob &j, const Entry &e, const std::string &k) {
             j.export_formats.clear();
             for (auto item : detail::split_commas(e.value))
             {
                 const auto f = parse_export_format(std::string(item));
                 if (!f)
                     bad(e, k, "a comma list of cir_csv, pdp_csv, ds_summary, cdf_points");
                 bool seen = false;
                 for (auto g : j.export_formats)
                     seen = seen || g == *f;
                 if (!seen)
                     j.export_formats.push_back(*f);
             }
         }},
        {"detect_threshold_db", [](BatchJob &j, const Entry &e, const std::string &k) { j.sweep.detect_threshold_db = as_finite(e, k); }},
        // "inf" disables the tap cut
        {"tap_dynamic_range_db", [](BatchJob &j, const Entry &e, const std::string &k) { j.sweep.tap_dynamic_range_db = as_double(e, k); }},
    };
    return table;
}
} // namespace

BatchJob parse_config(std::istream &is)
{
    std::map<std::string, Entry> entries;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(is, text))
    {
        ++line_no;
        std::string_view line = text;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw LineError(ErrorKind::config, line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw LineError(ErrorKind::config, line_no, "empty key");
        if (!setters().count(key))
            throw LineError(ErrorKind::config, line_no, "unknown key '" + key + "'");
        if (value.empty())
            throw LineError(ErrorKind::config, line_no, "missing value for '" + key + "'");
        if (!entries.emplace(key, Entry{value, line_no}).second)
            throw LineError(ErrorKind::config, line_no, "duplicate key '" + key + "'");
    }

    // Band and condition pick the preset; everything else overrides it
    BatchJob probe;
    for (const char *k : {"frequency_ghz", "condition"})
        if (const auto it = entries.find(k); it != entries.end())
            setters().at(k)(probe, it->second, k);

    BatchJob job;
    job.sweep = calibrated_sweep_options();
    const double f = probe.config.frequency_ghz;
    const Condition c = probe.config.condition;
    if (preset_mu_s(f, c))
        job.config = preset_config(f, c);
    else
    {
        if (!entries.count("mu_s_ns"))
            throw LineError(ErrorKind::config, 0,
                            "no mu_s preset for " + format_double(f) + " GHz " + to_string(c) +
                                "; set mu_s_ns explicitly");
        job.config.frequency_ghz = f;
        job.config.condition = c;
        job.config.path_loss_exponent = default_path_loss_exponent(c);
        job.config.shadow_sigma_db = default_shadow_sigma_db(c);
    }

    for (const auto &[key, entry] : entries)
        setters().at(key)(job, entry, key);

    try
    {
        job.validate();
    }
    catch (const Error &e)
    {
        // point at the offending key when the message names one
        std::size_t line = 0;
        const std::string msg = e.what();
        for (const auto &[key, entry] : entries)
            if (msg.rfind(key, 0) == 0 || msg.find(" " + key + " ") != std::string::npos)
                line = entry.line;
        throw LineError(ErrorKind::config, line, msg);
    }
    return job;
}

BatchJob parse_config_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
    return parse_config(is);
}

std::string emit_config(const BatchJob &job)
{
    const SimulationConfig &c = job.config;
    std::ostringstream os;
    auto kv = [&](const char *k, const std::string &v) { os << k << " = " << v << '\n'; };
    auto num = [&](const char *k, double v) { kv(k, format_double(v)); };

    os << "# effective configuration\n";
    num("frequency_ghz", c.frequency_ghz);
    kv("condition", to_string(c.condition));
    kv("scenario", to_string(c.scenario));
    num("tr_distance_m", c.tr_distance_m);
    kv("n_clusters_max", std::to_string(c.n_clusters_max));
    kv("fixed_cluster_count", c.fixed_cluster_count ? "true" : "false");
    num("mu_s_ns", c.mu_s_ns);
    num("path_loss_exponent", c.path_loss_exponent);
    num("shadow_sigma_db", c.shadow_sigma_db);
    kv("seed", std::to_string(c.seed));
    kv("n_realizations", std::to_string(c.n_realizations));
    kv("max_subpaths", std::to_string(c.max_subpaths));
    kv("max_lobes", std::to_string(c.max_lobes));
    num("cluster_decay_ns", c.cluster_decay_ns);
    num("subpath_decay_ns", c.subpath_decay_ns);
    num("cluster_shadow_db", c.cluster_shadow_db);
    num("lobe_zenith_mean_deg", c.lobe_zenith_mean_deg);
    num("lobe_zenith_sigma_deg", c.lobe_zenith_sigma_deg);
    num("subpath_offset_sigma_deg", c.subpath_offset_sigma_deg);
    kv("tx_antenna", job.tx_antenna);
    kv("rx_antenna", job.rx_antenna);
    if (job.tx_pointing_step_deg)
        num("tx_pointing_step_deg", *job.tx_pointing_step_deg);
    if (job.rx_pointing_step_deg)
        num("rx_pointing_step_deg", *job.rx_pointing_step_deg);
    kv("output_dir", job.output_dir);
    kv("workers", std::to_string(job.worker_count));
    std::string formats;
    for (auto f : job.export_formats)
        formats += (formats.empty() ? "" : ",") + std::string(to_string(f));
    kv("export_formats", formats);
    num("detect_threshold_db", job.sweep.detect_threshold_db);
    num("tap_dynamic_range_db", job.sweep.tap_dynamic_range_db);
    return os.str();
}

} // namespace tcsl
