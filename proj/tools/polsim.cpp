// SPDX-License-Identifier: Apache-2.0
//
// polsim - link-level simulator for dual-polarized RIS polarization shift keying
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

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polsim/experiments.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 geometry error, 4 I/O error.
enum ExitCode { kOk = 0, kConfigError = 2, kGeometryError = 3, kIoError = 4 };

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string threads = "auto";
};

void add_common(CLI::App *cmd, CommonOpts &opts)
{
    cmd->add_option("--config", opts.config_path, "JSON experiment config");
    cmd->add_option("--seed", opts.seed, "master seed override");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials per point");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", opts.format, "csv|svg|both")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "worker threads (number or 'auto')")
        ->capture_default_str();
}

polsim::SimConfig make_config(const CommonOpts &opts)
{
    polsim::SimConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = polsim::load_config(opts.config_path);
    } else {
        cfg.area_m2 = 1.0; // reference scene default
    }
    if (opts.seed)
        cfg.master_seed = *opts.seed;
    if (opts.trials)
        cfg.trials = *opts.trials;
    return cfg;
}

int parse_threads(const CommonOpts &opts)
{
    if (opts.threads == "auto")
        return 0;
    try {
        const int n = std::stoi(opts.threads);
        if (n < 1)
            throw polsim::ConfigError("--threads must be at least 1");
        return n;
    } catch (const polsim::ConfigError &) {
        throw;
    } catch (const std::exception &) {
        throw polsim::ConfigError("--threads expects a number or 'auto'");
    }
}

void emit(const std::vector<polsim::CurvePoint> &points, const CommonOpts &opts,
          const std::string &stem, polsim::YScale yscale, const std::string &x_label,
          const std::string &y_label)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec)
        throw polsim::IoError("cannot create output directory: " + opts.out_dir);
    if (opts.format == "csv" || opts.format == "both") {
        const fs::path p = fs::path(opts.out_dir) / (stem + ".csv");
        polsim::write_csv(points, p);
        std::printf("wrote %s\n", p.c_str());
    }
    if (opts.format == "svg" || opts.format == "both") {
        const fs::path p = fs::path(opts.out_dir) / (stem + ".svg");
        polsim::write_svg(points, p, yscale, x_label, y_label);
        std::printf("wrote %s\n", p.c_str());
    }
}

int run_snr_sweep(const CommonOpts &opts)
{
    const polsim::SimConfig cfg = make_config(opts);
    const auto grid =
        cfg.beta_grid_deg.empty() ? polsim::default_beta_grid_deg() : cfg.beta_grid_deg;
    const auto points = polsim::sweep_snr_vs_beta(cfg, grid);
    emit(points, opts, "snr_vs_beta", polsim::YScale::Linear,
         "polarization mismatch angle (deg)", "SNR (dB)");
    return kOk;
}

int run_ber_area_sweep(const CommonOpts &opts)
{
    const polsim::SimConfig cfg = make_config(opts);
    const auto grid =
        cfg.area_grid_m2.empty() ? polsim::default_area_grid_m2() : cfg.area_grid_m2;
    const auto series = polsim::default_area_series(cfg);
    const auto points =
        polsim::sweep_ber_vs_area(cfg, grid, series, parse_threads(opts));
    emit(points, opts, "ber_vs_area", polsim::YScale::Log10, "RIS surface area (m^2)",
         "BER");
    return kOk;
}

int run_mismatch_error_sweep(const CommonOpts &opts)
{
    const polsim::SimConfig cfg = make_config(opts);
    const auto grid = cfg.sigma_e_grid_deg.empty() ? polsim::default_sigma_e_grid_deg()
                                                   : cfg.sigma_e_grid_deg;
    const auto points = polsim::sweep_ber_vs_sigma_e(cfg, grid, parse_threads(opts));
    emit(points, opts, "ber_vs_sigma_e", polsim::YScale::Log10,
         "mismatch estimation error std (deg)", "BER");
    return kOk;
}

int run_single_point(const CommonOpts &opts)
{
    const polsim::SimConfig cfg = make_config(opts);
    const polsim::TrialPlan plan(cfg);
    const polsim::BerEstimate est =
        polsim::estimate_ber(plan, cfg.trials, cfg.master_seed, parse_threads(opts));

    const double gamma1 = plan.gamma1().gamma;
    std::printf("scheme          : %s\n", polsim::scheme_name(cfg.scheme).c_str());
    std::printf("elements (M)    : %zu\n", plan.m_count());
    std::printf("eta             : %.6e\n", plan.eta());
    std::printf("gamma1          : %.4f dB\n", polsim::to_db(gamma1));
    if (cfg.scheme == polsim::Scheme::Scheme2) {
        const auto g2 = polsim::snr_scheme2(plan.m_count(), plan.eta(), plan.tx_power_w(),
                                            plan.noise_power_w(), plan.beta());
        std::printf("gamma2 (theory) : %.4f dB\n", polsim::to_db(g2.gamma));
    }
    std::printf("trials          : %lld\n", est.trials);
    std::printf("bit errors      : %lld\n", est.errors);
    std::printf("BER             : %.6e  [%.6e, %.6e] 95%%\n", est.ber, est.ci_low,
                est.ci_high);

    std::optional<double> theory;
    if (cfg.scheme == polsim::Scheme::Scheme1)
        theory = polsim::ber_theoretical(plan.gamma1());
    else if (cfg.scheme == polsim::Scheme::Scheme2)
        theory = polsim::ber_theoretical(polsim::snr_scheme2(
            plan.m_count(), plan.eta(), plan.tx_power_w(), plan.noise_power_w(),
            plan.beta()));
    if (theory)
        std::printf("BER (theory)    : %.6e\n", *theory);

    const double x = cfg.area_m2 ? *cfg.area_m2 : static_cast<double>(*cfg.m_count);
    const std::vector<polsim::CurvePoint> points{
        {x, polsim::scheme_name(cfg.scheme), est.ber, theory, est.ci_low, est.ci_high}};
    emit(points, opts, "single_point", polsim::YScale::Log10, "configured point", "BER");
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for RIS-aided binary polarization shift keying"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto *snr = app.add_subcommand("snr-sweep", "SNR vs mismatch angle");
    auto *area = app.add_subcommand("ber-area-sweep", "BER vs RIS surface area");
    auto *sige = app.add_subcommand("mismatch-error-sweep", "BER vs estimation error std");
    auto *single = app.add_subcommand("single-point", "one BER estimate");
    for (CLI::App *cmd : {snr, area, sige, single})
        add_common(cmd, opts);

    try {
        app.parse(argc, argv);
        if (snr->parsed())
            return run_snr_sweep(opts);
        if (area->parsed())
            return run_ber_area_sweep(opts);
        if (sige->parsed())
            return run_mismatch_error_sweep(opts);
        return run_single_point(opts);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    } catch (const polsim::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const polsim::GeometryError &e) {
        std::fprintf(stderr, "geometry error: %s\n", e.what());
        return kGeometryError;
    } catch (const polsim::IoError &e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIoError;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    }
}
