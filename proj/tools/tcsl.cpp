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

// Command-line front end:
//   tcsl generate             --config job.cfg [--seed S] [--out DIR] [--workers W] [--n N]
//   tcsl stats                --config job.cfg [--seed S] [--out DIR] [--workers W] [--n N]
//   tcsl antenna import-cuts  --vertical v.csv --horizontal h.csv --peak-gain G --out p.ant3d
//   tcsl antenna synth-3gpp   [--theta-3db ...] --out p.ant3d
//   tcsl validate ks          --sample a.csv [--reference b.csv | --config job.cfg] [--column NAME]

#include "tcsl/ant3d.hpp"
#include "tcsl/antenna.hpp"
#include "tcsl/batch.hpp"
#include "tcsl/config.hpp"
#include "tcsl/error.hpp"
#include "tcsl/stats.hpp"

#include "text.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace tcsl;

// Exit codes; 1 and 2 are left to CLI11 (usage errors)
int exit_code(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::config:
        return 3;
    case ErrorKind::format:
        return 4;
    case ErrorKind::io:
        return 5;
    case ErrorKind::domain:
        return 6;
    case ErrorKind::runtime:
        return 7;
    }
    return 7;
}
constexpr int exit_rejected = 10; // validate ks: null hypothesis rejected

struct JobOptions
{
    std::string config_path;
    std::optional<std::uint32_t> seed;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::optional<long> n;
};

void add_job_options(CLI::App *cmd, JobOptions &o, bool config_required)
{
    auto *c = cmd->add_option("--config", o.config_path, "key = value job file");
    if (config_required)
        c->required();
    cmd->add_option("--seed", o.seed, "override the base seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--workers", o.workers, "worker threads (default from config)");
    cmd->add_option("--n", o.n, "override n_realizations");
}

BatchJob load_job(const JobOptions &o)
{
    BatchJob job = parse_config_file(o.config_path);
    if (o.seed)
        job.config.seed = *o.seed;
    if (o.out)
        job.output_dir = *o.out;
    if (o.workers)
        job.worker_count = *o.workers;
    if (o.n)
        job.config.n_realizations = *o.n;
    return job;
}

std::string fmt(const std::optional<double> &v)
{
    return v ? detail::format_double(*v) : std::string("n/a");
}

void print_summary(const BatchSummary &s)
{
    std::cout << "realizations          " << s.n_realizations << "\n"
              << "directional samples   " << s.directional_samples << "\n"
              << "excluded (DS == 0)    " << s.excluded_zero_ds << "\n"
              << "undetected            " << s.undetected << "\n"
              << "directional log10 DS  mu " << fmt(s.directional_mu_log10) << "  sigma "
              << fmt(s.directional_sigma_log10) << "\n"
              << "omni log10 DS         mu " << fmt(s.omni_mu_log10) << "  sigma " << fmt(s.omni_sigma_log10) << "\n";
}

int cmd_generate(const JobOptions &o)
{
    const BatchJob job = load_job(o);
    const BatchManifest m = run_batch(job);
    for (const auto &f : m.files)
        std::cout << f.path << "  " << f.bytes << " bytes  " << f.sha256 << "\n";
    print_summary(m.summary);
    return 0;
}

// In-memory run; --out additionally writes the CDF points and directional samples
int cmd_stats(const JobOptions &o)
{
    BatchJob job = load_job(o);
    if (o.out)
    {
        job.export_formats = {ExportFormat::ds_summary, ExportFormat::cdf_points};
        print_summary(run_batch(job).summary);
        return 0;
    }
    job.validate();
    const ResolvedAntennas ant = resolve_antennas(job);
    const auto results = simulate_range(job.config, ant, job.sweep, 0,
                                        static_cast<std::uint64_t>(job.config.n_realizations), job.worker_count);
    print_summary(summarize(results));
    return 0;
}

// One numeric column of a CSV file. Without a column name the file must have a single column;
// a non-numeric first row is taken as the header.
std::vector<double> read_column(const std::string &path, const std::string &column)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> index;
    bool first = true;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto fields = detail::split_commas(t);
        if (first)
        {
            first = false;
            if (!detail::parse_double(fields.front()))
            {
                for (std::size_t k = 0; k < fields.size(); ++k)
                    if (detail::trim(fields[k]) == column || (column.empty() && fields.size() == 1))
                        index = k;
                if (!index)
                    throw LineError(ErrorKind::format, lineno,
                                    column.empty() ? "several columns, pass --column"
                                                   : "no column '" + column + "' in header");
                continue;
            }
            if (!column.empty())
                throw LineError(ErrorKind::format, lineno, "no header row to look up column '" + column + "'");
            if (fields.size() != 1)
                throw LineError(ErrorKind::format, lineno, "several columns, pass --column with a header row");
            index = 0;
        }
        if (*index >= fields.size())
            throw LineError(ErrorKind::format, lineno, "missing column");
        const auto v = detail::parse_double(fields[*index]);
        if (!v)
            throw LineError(ErrorKind::format, lineno, "not a number: '" + std::string(fields[*index]) + "'");
        values.push_back(*v);
    }
    if (values.empty())
        throw Error(ErrorKind::format, "'" + path + "' holds no values");
    return values;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"tcsl: time-cluster spatial-lobe channel simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string("tcsl ") + tcsl_version + "\nmanifest format " +
                             std::to_string(manifest_format_version) + "\ndataset format " +
                             std::to_string(dataset_format_version) + "\nant3d format " +
                             std::to_string(ant3d_format_version));

    JobOptions gen_opt, stats_opt;
    auto *gen = app.add_subcommand("generate", "run a batch and write the selected exports plus manifest.json");
    add_job_options(gen, gen_opt, true);
    auto *st = app.add_subcommand("stats", "log10 delay-spread statistics of a batch");
    add_job_options(st, stats_opt, true);

    auto *ant = app.add_subcommand("antenna", "antenna pattern tools");
    ant->require_subcommand(1);

    std::string vcut, hcut, cut_out;
    double cut_peak = 0.0, cut_step = 1.0;
    std::optional<double> cut_freq;
    std::string cut_pol = "vertical";
    auto *imp = ant->add_subcommand("import-cuts", "rebuild a 3-D pattern from vertical and horizontal plane cuts");
    imp->add_option("--vertical", vcut, "angle_deg,gain_dbi (elevation, -90..90)")->required();
    imp->add_option("--horizontal", hcut, "angle_deg,gain_dbi (azimuth)")->required();
    imp->add_option("--peak-gain", cut_peak, "peak gain in dBi")->required();
    imp->add_option("--step", cut_step, "grid step in degrees")->capture_default_str();
    imp->add_option("--frequency", cut_freq, "frequency in GHz written to the header");
    imp->add_option("--polarization", cut_pol, "vertical | horizontal | dual")->capture_default_str();
    imp->add_option("--out", cut_out, "Ant3D output file")->required();

    ThreeGppParams tp;
    double synth_step = 1.0;
    std::string synth_out;
    bool synth_normalize = false;
    auto *syn = ant->add_subcommand("synth-3gpp", "write the 3GPP element pattern as Ant3D");
    syn->add_option("--theta-3db", tp.theta_3db_deg, "vertical HPBW, deg")->capture_default_str();
    syn->add_option("--phi-3db", tp.phi_3db_deg, "horizontal HPBW, deg")->capture_default_str();
    syn->add_option("--sla-v", tp.sla_v_db, "side-lobe limit, dB")->capture_default_str();
    syn->add_option("--a-max", tp.a_max_db, "front-to-back limit, dB")->capture_default_str();
    syn->add_option("--gain", tp.element_peak_gain_dbi, "element peak gain, dBi")->capture_default_str();
    syn->add_option("--step", synth_step, "grid step in degrees")->capture_default_str();
    syn->add_flag("--normalize", synth_normalize, "rescale so the sphere integral is 4 pi");
    syn->add_option("--out", synth_out, "Ant3D output file")->required();

    auto *val = app.add_subcommand("validate", "statistical checks");
    val->require_subcommand(1);
    std::string ks_sample, ks_reference, ks_column;
    double ks_alpha = 0.05;
    JobOptions ks_opt;
    auto *ks = val->add_subcommand("ks", "two-sample Kolmogorov-Smirnov test");
    ks->add_option("--sample", ks_sample, "CSV with the sample under test")->required();
    ks->add_option("--reference", ks_reference, "CSV with the reference sample");
    ks->add_option("--column", ks_column, "column name when the CSV has several");
    ks->add_option("--alpha", ks_alpha, "significance level")->capture_default_str();
    add_job_options(ks, ks_opt, false);
    ks->get_option("--out")->description("unused");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (gen->parsed())
            return cmd_generate(gen_opt);
        if (st->parsed())
            return cmd_stats(stats_opt);
        if (imp->parsed())
        {
            const PlaneCut v = read_plane_cut_csv(vcut, CutPlane::vertical);
            const PlaneCut h = read_plane_cut_csv(hcut, CutPlane::horizontal);
            PatternInfo info;
            info.frequency_ghz = cut_freq;
            info.polarization = parse_polarization(cut_pol);
            info.source = "cuts:" + vcut + "+" + hcut;
            write_ant3d(reconstruct_from_cuts(v, h, cut_peak, cut_step).with_info(info), cut_out);
            std::cout << "wrote " << cut_out << "\n";
            return 0;
        }
        if (syn->parsed())
        {
            AntennaPattern p = synthesize_3gpp(tp, synth_step);
            if (synth_normalize)
                p = normalize_to_4pi(p);
            write_ant3d(p, synth_out);
            std::cout << "wrote " << synth_out << "  peak " << detail::format_double(p.peak_gain_dbi()) << " dBi\n";
            return 0;
        }
        if (ks->parsed())
        {
            if (ks_alpha <= 0.0 || ks_alpha >= 1.0)
                throw Error(ErrorKind::domain, "--alpha must lie in (0, 1)");
            const SampleSet a(read_column(ks_sample, ks_column), ks_sample);
            SampleSet b;
            if (!ks_reference.empty())
            {
                b = SampleSet(read_column(ks_reference, ks_column), ks_reference);
            }
            else if (!ks_opt.config_path.empty())
            {
                // reference = directional DS of a fresh simulation
                const BatchJob job = load_job(ks_opt);
                job.validate();
                const auto results = simulate_range(job.config, resolve_antennas(job), job.sweep, 0,
                                                    static_cast<std::uint64_t>(job.config.n_realizations),
                                                    job.worker_count);
                std::vector<double> ds;
                for (const auto &r : results)
                    if (r.directional && r.directional->rms_ds_ns > 0.0)
                        ds.push_back(r.directional->rms_ds_ns);
                b = SampleSet(std::move(ds), "simulated");
            }
            else
            {
                throw Error(ErrorKind::config, "validate ks needs --reference or --config");
            }
            if (b.empty())
                throw Error(ErrorKind::runtime, "reference sample is empty");
            const KsResult r = ks_two_sample(a, b);
            const bool reject = r.p_value < ks_alpha;
            std::cout << "n_a " << r.n_a << "  n_b " << r.n_b << "\nD " << detail::format_double(r.statistic)
                      << "\np " << detail::format_double(r.p_value) << "\n"
                      << (reject ? "reject" : "accept") << " at alpha " << detail::format_double(ks_alpha) << "\n";
            return reject ? exit_rejected : 0;
        }
    }
    catch (const Error &e)
    {
        std::cerr << "tcsl: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    }
    catch (const std::exception &e)
    {
        std::cerr << "tcsl: runtime error: " << e.what() << "\n";
        return exit_code(ErrorKind::runtime);
    }
    return 0;
}
