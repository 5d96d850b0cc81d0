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

#include "tcsl/batch.hpp"
#include "tcsl/ant3d.hpp"
#include "tcsl/error.hpp"
#include "tcsl/stats.hpp"
#include "parallel.hpp"
#include "text.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tcsl
{

using detail::format_double;

namespace
{
// xorshift-multiply avalanche; every step is invertible, so this is a bijection on 32 bits
std::uint32_t avalanche32(std::uint32_t x)
{
    x ^= x >> 16;
    x *= 0x7feb352du;
    x ^= x >> 15;
    x *= 0x846ca68bu;
    x ^= x >> 16;
    return x;
}
} // namespace

std::uint32_t derive_seed(std::uint32_t base, std::uint64_t index)
{
    // key mixes the base (and the high index word), the low word then goes through a
    // bijection: no two indices below 2^32 share a seed for a given base
    const auto lo = static_cast<std::uint32_t>(index);
    const auto hi = static_cast<std::uint32_t>(index >> 32);
    const std::uint32_t key = avalanche32(base + 0x9e3779b9u * (hi + 1u));
    return avalanche32(key ^ lo);
}

// ---------- Antennas ----------

namespace
{
struct HornSpec
{
    double gain_dbi;
    double hpbw_deg;
};

std::optional<HornSpec> band_horn(double frequency_ghz)
{
    if (std::fabs(frequency_ghz - 16.95) < 1e-9)
        return HornSpec{20.0, 15.0};
    if (std::fabs(frequency_ghz - 6.75) < 1e-9)
        return HornSpec{15.0, 30.0};
    return std::nullopt;
}

// "horn:<gain>:<hpbw>"
std::optional<HornSpec> parse_horn(const std::string &ref)
{
    if (ref.rfind("horn:", 0) != 0)
        return std::nullopt;
    const std::string rest = ref.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::config, "antenna '" + ref + "': expected horn:<gain_dbi>:<hpbw_deg>");
    const auto g = detail::parse_double(rest.substr(0, colon));
    const auto h = detail::parse_double(rest.substr(colon + 1));
    if (!g || !h || !std::isfinite(*g) || !(*h > 0.0 && *h <= 180.0))
        throw Error(ErrorKind::config, "antenna '" + ref + "': gain must be finite and HPBW in (0, 180]");
    return HornSpec{*g, *h};
}

std::optional<HornSpec> horn_spec(const std::string &ref, double frequency_ghz)
{
    if (ref == "auto")
    {
        auto h = band_horn(frequency_ghz);
        if (!h)
            throw Error(ErrorKind::config, "antenna 'auto' has no measurement horn for " + format_double(frequency_ghz) +
                                               " GHz; name an antenna explicitly");
        return h;
    }
    return parse_horn(ref);
}

constexpr double default_pointing_step_deg = 30.0;
} // namespace

AntennaPattern resolve_antenna(const std::string &ref, double frequency_ghz)
{
    if (const auto h = horn_spec(ref, frequency_ghz))
        return horn_pattern(h->gain_dbi, h->hpbw_deg);
    if (ref == "isotropic")
        return isotropic_pattern(0.0);
    if (ref == "3gpp")
        return synthesize_3gpp(ThreeGppParams{});
    if (!std::filesystem::exists(ref))
        throw Error(ErrorKind::io, "antenna '" + ref + "' is neither a built-in name nor an existing Ant3D file");
    return read_ant3d(ref);
}

ResolvedAntennas resolve_antennas(const BatchJob &job)
{
    const double f = job.config.frequency_ghz;
    auto step = [&](const std::string &ref, const std::optional<double> &explicit_step) {
        if (explicit_step)
            return *explicit_step;
        if (const auto h = horn_spec(ref, f))
            return h->hpbw_deg;
        return default_pointing_step_deg;
    };
    ResolvedAntennas r{resolve_antenna(job.tx_antenna, f), resolve_antenna(job.rx_antenna, f), {}};
    r.grid = default_pointing_grid(step(job.tx_antenna, job.tx_pointing_step_deg),
                                   step(job.rx_antenna, job.rx_pointing_step_deg));
    return r;
}

// ---------- Simulation kernels ----------

namespace
{
RealizationResult simulate_one(const SimulationConfig &cfg, const ResolvedAntennas &ant, const SweepOptions &sweep,
                               std::uint64_t index)
{
    Rng rng(derive_seed(cfg.seed, index));
    RealizationResult out;
    out.realization = generate_realization(cfg, rng);
    out.omni_rms_ds_ns = rms_delay_spread(power_delay_profile(out.realization.components));

    const auto samples = directional_ds_sweep(out.realization, ant.tx, ant.rx, ant.grid, sweep);
    out.detected_pointings = samples.size();
    out.directional = strongest_pointing(samples);
    return out;
}
} // namespace

std::vector<RealizationResult> simulate_range_serial(const SimulationConfig &cfg, const ResolvedAntennas &antennas,
                                                     const SweepOptions &sweep, std::uint64_t first,
                                                     std::uint64_t count)
{
    cfg.validate();
    std::vector<RealizationResult> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(simulate_one(cfg, antennas, sweep, first + i));
    return out;
}

std::vector<RealizationResult> simulate_range(const SimulationConfig &cfg, const ResolvedAntennas &antennas,
                                              const SweepOptions &sweep, std::uint64_t first, std::uint64_t count,
                                              int workers)
{
    cfg.validate();
    std::vector<RealizationResult> out(count);
    std::exception_ptr failure;
    const long long n = static_cast<long long>(count);
    const int threads = detail::resolve_workers(workers);
    (void)threads;
    // each slot is written by exactly one iteration, so the merge is index-ordered by construction
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (long long i = 0; i < n; ++i)
    {
        try
        {
            out[static_cast<std::size_t>(i)] = simulate_one(cfg, antennas, sweep, first + static_cast<std::uint64_t>(i));
        }
        catch (...)
        {
#pragma omp critical(tcsl_batch_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

// ---------- Summary ----------

BatchSummary summarize(const std::vector<RealizationResult> &results)
{
    BatchSummary s;
    s.n_realizations = results.size();
    std::vector<double> dir, omni;
    for (const auto &r : results)
    {
        if (r.omni_rms_ds_ns > 0.0)
            omni.push_back(r.omni_rms_ds_ns);
        if (!r.directional)
            ++s.undetected;
        else if (r.directional->rms_ds_ns > 0.0)
            dir.push_back(r.directional->rms_ds_ns);
        else
            ++s.excluded_zero_ds;
    }
    s.directional_samples = dir.size();
    if (dir.size() >= 2)
    {
        const auto st = log10_ds_stats(SampleSet(dir, "directional"));
        s.directional_mu_log10 = st.mu_log10;
        s.directional_sigma_log10 = st.sigma_log10;
    }
    if (omni.size() >= 2)
    {
        const auto st = log10_ds_stats(SampleSet(omni, "omni"));
        s.omni_mu_log10 = st.mu_log10;
        s.omni_sigma_log10 = st.sigma_log10;
    }
    return s;
}

std::string sha256_hex(const std::string &bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::runtime, "SHA-256 computation failed");
    static const char *hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i)
    {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

// ---------- Exports ----------

namespace
{
std::string power_db(double p)
{
    return format_double(10.0 * std::log10(p));
}

std::string components_csv(const std::vector<RealizationResult> &results)
{
    std::string s = "realization,cluster,lobe,delay_ns,power_db,phase_rad,aod_deg,zod_deg,aoa_deg,zoa_deg\n";
    for (std::size_t i = 0; i < results.size(); ++i)
        for (const auto &c : results[i].realization.components)
        {
            s += std::to_string(i) + ',' + std::to_string(c.cluster_index) + ',' + std::to_string(c.lobe_index) + ',' +
                 format_double(c.delay_ns) + ',' + power_db(c.power()) + ',' + format_double(c.phase_rad) + ',' +
                 format_double(c.aod_deg) + ',' + format_double(c.zod_deg) + ',' + format_double(c.aoa_deg) + ',' +
                 format_double(c.zoa_deg) + '\n';
        }
    return s;
}

std::string summary_csv(const std::vector<RealizationResult> &results)
{
    std::string s = "realization,n_clusters,n_paths,path_loss_db,omni_rms_ds_ns\n";
    for (std::size_t i = 0; i < results.size(); ++i)
    {
        const auto &r = results[i];
        s += std::to_string(i) + ',' + std::to_string(r.realization.n_time_clusters) + ',' +
             std::to_string(r.realization.components.size()) + ',' + format_double(r.realization.path_loss_db) + ',' +
             format_double(r.omni_rms_ds_ns) + '\n';
    }
    return s;
}

std::string directional_csv(const std::vector<RealizationResult> &results, const PointingGrid &grid)
{
    std::string s = "realization,detected_pointings,tx_azimuth_deg,tx_zenith_deg,rx_azimuth_deg,rx_zenith_deg,"
                     "power_db,directional_rms_ds_ns\n";
    for (std::size_t i = 0; i < results.size(); ++i)
    {
        const auto &r = results[i];
        s += std::to_string(i) + ',' + std::to_string(r.detected_pointings);
        if (r.directional)
        {
            const Pointing &tx = grid.tx[r.directional->tx_index];
            const Pointing &rx = grid.rx[r.directional->rx_index];
            s += ',' + format_double(tx.azimuth_deg) + ',' + format_double(tx.zenith_deg) + ',' +
                 format_double(rx.azimuth_deg) + ',' + format_double(rx.zenith_deg) + ',' +
                 power_db(r.directional->power) + ',' + format_double(r.directional->rms_ds_ns);
        }
        else
            s += ",,,,,,";
        s += '\n';
    }
    return s;
}

std::string pdp_csv(const std::vector<RealizationResult> &results, const ResolvedAntennas &ant,
                    const SweepOptions &sweep)
{
    std::string s = "realization,kind,delay_ns,power_db\n";
    auto emit = [&](std::size_t i, const char *kind, const PowerDelayProfile &pdp) {
        for (const auto &t : pdp.taps)
            if (t.power > 0.0)
                s += std::to_string(i) + ',' + kind + ',' + format_double(t.delay_ns) + ',' + power_db(t.power) + '\n';
    };
    for (std::size_t i = 0; i < results.size(); ++i)
    {
        const auto &r = results[i];
        emit(i, "omni", power_delay_profile(r.realization.components));
        if (r.directional)
        {
            DirectionalQuery q;
            q.tx_pointing = ant.grid.tx[r.directional->tx_index];
            q.rx_pointing = ant.grid.rx[r.directional->rx_index];
            q.tx_pattern = &ant.tx;
            q.rx_pattern = &ant.rx;
            const auto filtered = directional_filter(r.realization, q);
            emit(i, "directional", truncate_pdp(power_delay_profile(filtered), sweep.tap_dynamic_range_db));
        }
    }
    return s;
}

std::string cdf_csv(const std::vector<double> &values)
{
    std::string s = "value,probability\n";
    if (values.empty())
        return s;
    for (const auto &p : empirical_cdf(SampleSet(values)))
        s += format_double(p.value) + ',' + format_double(p.probability) + '\n';
    return s;
}

nlohmann::ordered_json optional_number(const std::optional<double> &v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

// Identity of the run: everything that determines the output bytes (not workers / output_dir)
nlohmann::ordered_json run_identity(const BatchJob &job)
{
    const SimulationConfig &c = job.config;
    nlohmann::ordered_json j;
    j["frequency_ghz"] = c.frequency_ghz;
    j["condition"] = to_string(c.condition);
    j["scenario"] = to_string(c.scenario);
    j["tr_distance_m"] = c.tr_distance_m;
    j["n_clusters_max"] = c.n_clusters_max;
    j["fixed_cluster_count"] = c.fixed_cluster_count;
    j["mu_s_ns"] = c.mu_s_ns;
    j["path_loss_exponent"] = c.path_loss_exponent;
    j["shadow_sigma_db"] = c.shadow_sigma_db;
    j["seed"] = c.seed;
    j["n_realizations"] = c.n_realizations;
    j["max_subpaths"] = c.max_subpaths;
    j["max_lobes"] = c.max_lobes;
    j["cluster_decay_ns"] = c.cluster_decay_ns;
    j["subpath_decay_ns"] = c.subpath_decay_ns;
    j["cluster_shadow_db"] = c.cluster_shadow_db;
    j["lobe_zenith_mean_deg"] = c.lobe_zenith_mean_deg;
    j["lobe_zenith_sigma_deg"] = c.lobe_zenith_sigma_deg;
    j["subpath_offset_sigma_deg"] = c.subpath_offset_sigma_deg;
    j["tx_antenna"] = job.tx_antenna;
    j["rx_antenna"] = job.rx_antenna;
    j["detect_threshold_db"] = job.sweep.detect_threshold_db;
    // JSON has no infinity
    j["tap_dynamic_range_db"] = std::isfinite(job.sweep.tap_dynamic_range_db)
                                    ? nlohmann::ordered_json(job.sweep.tap_dynamic_range_db)
                                    : nlohmann::ordered_json("inf");
    return j;
}

void write_file(const std::filesystem::path &path, const std::string &bytes)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.flush();
    if (!os)
        throw Error(ErrorKind::io, "write to '" + path.string() + "' failed");
}

// Creates the directory and proves it is writable, leaving nothing behind
void prepare_output_dir(const std::filesystem::path &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw Error(ErrorKind::io, "cannot create output directory '" + dir.string() + "'");
    const auto probe = dir / ".tcsl_write_probe";
    {
        std::ofstream os(probe);
        if (!os)
            throw Error(ErrorKind::io, "output directory '" + dir.string() + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

BatchManifest finish_batch(const BatchJob &job, const ResolvedAntennas &ant,
                           const std::vector<RealizationResult> &results)
{
    const std::filesystem::path dir(job.output_dir);
    const std::uint64_t last = results.empty() ? 0 : results.size() - 1;

    std::vector<std::pair<std::string, std::string>> files;
    auto wants = [&](ExportFormat f) {
        for (auto g : job.export_formats)
            if (g == f)
                return true;
        return false;
    };
    if (wants(ExportFormat::cir_csv))
    {
        files.emplace_back("components.csv", components_csv(results));
        files.emplace_back("summary.csv", summary_csv(results));
    }
    if (wants(ExportFormat::pdp_csv))
        files.emplace_back("pdp.csv", pdp_csv(results, ant, job.sweep));
    if (wants(ExportFormat::ds_summary))
        files.emplace_back("directional_ds.csv", directional_csv(results, ant.grid));
    if (wants(ExportFormat::cdf_points))
    {
        std::vector<double> dir_ds, omni_ds;
        for (const auto &r : results)
        {
            if (r.directional && r.directional->rms_ds_ns > 0.0)
                dir_ds.push_back(r.directional->rms_ds_ns);
            if (r.omni_rms_ds_ns > 0.0)
                omni_ds.push_back(r.omni_rms_ds_ns);
        }
        files.emplace_back("cdf_directional.csv", cdf_csv(dir_ds));
        files.emplace_back("cdf_omni.csv", cdf_csv(omni_ds));
    }

    BatchManifest m;
    m.summary = summarize(results);
    for (const auto &[name, bytes] : files)
        m.files.push_back({name, 0, last, bytes.size(), sha256_hex(bytes)});

    nlohmann::ordered_json j;
    j["artifact"] = "tcsl";
    j["version"] = tcsl_version;
    j["manifest_format_version"] = manifest_format_version;
    j["dataset_format_version"] = dataset_format_version;
    j["run"] = run_identity(job);
    auto &jf = j["files"] = nlohmann::ordered_json::array();
    for (const auto &e : m.files)
        jf.push_back({{"path", e.path},
                      {"realizations", {e.first_realization, e.last_realization}},
                      {"bytes", e.bytes},
                      {"sha256", e.sha256}});
    const auto &s = m.summary;
    j["summary"] = {{"n_realizations", s.n_realizations},
                    {"directional_samples", s.directional_samples},
                    {"excluded_zero_ds", s.excluded_zero_ds},
                    {"undetected", s.undetected},
                    {"directional_mu_log10_ns", optional_number(s.directional_mu_log10)},
                    {"directional_sigma_log10_ns", optional_number(s.directional_sigma_log10)},
                    {"omni_mu_log10_ns", optional_number(s.omni_mu_log10)},
                    {"omni_sigma_log10_ns", optional_number(s.omni_sigma_log10)}};
    m.json = j.dump(2) + "\n";

    for (const auto &[name, bytes] : files)
        write_file(dir / name, bytes);
    write_file(dir / "manifest.json", m.json);
    return m;
}

template <typename Kernel> BatchManifest run_batch_with(const BatchJob &job, Kernel &&kernel)
{
    // fail fast: config, antennas and output directory are all checked before generating
    job.validate();
    const ResolvedAntennas ant = resolve_antennas(job);
    prepare_output_dir(job.output_dir);
    const auto results = kernel(ant);
    return finish_batch(job, ant, results);
}
} // namespace

BatchManifest run_batch(const BatchJob &job)
{
    return run_batch_with(job, [&](const ResolvedAntennas &ant) {
        return simulate_range(job.config, ant, job.sweep, 0, static_cast<std::uint64_t>(job.config.n_realizations),
                              job.worker_count);
    });
}

BatchManifest run_batch_serial(const BatchJob &job)
{
    return run_batch_with(job, [&](const ResolvedAntennas &ant) {
        return simulate_range_serial(job.config, ant, job.sweep, 0,
                                     static_cast<std::uint64_t>(job.config.n_realizations));
    });
}

} // namespace tcsl
