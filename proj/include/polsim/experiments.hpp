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

#ifndef POLSIM_EXPERIMENTS_HPP
#define POLSIM_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polsim/analysis.hpp"
#include "polsim/linksim.hpp"
#include "polsim/scene.hpp"

namespace polsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scheme { Scheme1, Scheme2, AskMatched, AskNoncoherent };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string &name);

/// One Monte Carlo experiment. Angles and powers use field units
/// (degrees, dBm, dBi); everything is converted to SI at load time.
/// Defaults reproduce the reference scene: 3 GHz carrier, 3 dBi
/// antennas, 8 dBm transmit power, -96 dBm noise, endpoints 70.7 m from
/// the surface at 45 degrees incidence.
struct SimConfig {
    Position3 source{50.0, 0.0, 0.0};
    Position3 receiver{50.0, 100.0, 0.0};
    Position3 ris_center{0.0, 50.0, 0.0};
    Position3 ris_normal{1.0, 0.0, 0.0};
    double carrier_freq_hz = 3e9;
    double gain_tx_dbi = 3.0;
    double gain_rx_dbi = 3.0;
    double tx_power_dbm = 8.0;
    double noise_power_dbm = -96.0;
    std::optional<double> element_side_m; // default lambda/2

    Scheme scheme = Scheme::Scheme1;
    double beta_deg = 0.0;
    double sigma_e_deg = 0.0;
    double ask_delta_phi_deg = 0.0;

    std::optional<double> area_m2; // exactly one of area_m2 / m_count
    std::optional<std::size_t> m_count;

    long long trials = 1000000;
    std::uint64_t master_seed = 1;

    /// Calibration hook: pins M eta sqrt(p_t)/sigma so that gamma_1
    /// equals this value, bypassing the geometry.
    std::optional<double> gamma_override_db;

    /// Disables the noise term entirely (the sigma^2 -> 0 switch).
    bool noise_off = false;

    // Sweep grids; empty selects the built-in defaults.
    std::vector<double> beta_grid_deg;
    std::vector<double> area_grid_m2;
    std::vector<double> sigma_e_grid_deg;

    /// Throws ConfigError when a field is out of range or the area/count
    /// choice is not exclusive.
    void validate() const;
};

SimConfig load_config(const std::filesystem::path &path);
void save_config(const SimConfig &config, const std::filesystem::path &path);
SimConfig config_from_json_text(const std::string &text);
std::string config_to_json_text(const SimConfig &config);

/// Empirical bit error rate with a 95% Wilson score interval.
struct BerEstimate {
    long long errors = 0;
    long long trials = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

BerEstimate wilson_interval(long long errors, long long trials);

/// One sample of a result curve. x is the sweep variable (mismatch angle
/// in degrees, surface area in m^2 or error std in degrees), y the
/// measured SNR (dB) or BER.
struct CurvePoint {
    double x = 0.0;
    std::string series;
    double y = 0.0;
    std::optional<double> y_theory;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

/// Transmitted bit of a trial: parity of a seed-derived hash, balanced
/// and deterministic.
Bit trial_bit(std::uint64_t master_seed, std::uint64_t trial_id);

/// Immutable per-configuration state shared by every trial: the scene,
/// its link budget, bit-indexed channel caches where the profile does
/// not depend on the per-trial mismatch estimate. Safe for concurrent
/// run_trial calls.
class TrialPlan {
  public:
    explicit TrialPlan(const SimConfig &config);

    /// One end-to-end transmission, deterministic in (master_seed,
    /// trial_id): estimate the mismatch, build the profile, compose the
    /// channel with the true mismatch, add noise, detect.
    Bit run_trial(Bit bit, std::uint64_t trial_id) const;

    const LinkBudget &budget() const { return budget_; }
    double eta() const { return budget_.eta; }
    std::size_t m_count() const { return budget_.m_count(); }
    double tx_power_w() const { return p_t_; }
    double noise_power_w() const { return sigma2_; }
    MismatchAngle beta() const { return beta_; }
    Scheme scheme() const { return scheme_; }

    /// gamma_1 of this plan (equals the override when one is set).
    Snr gamma1() const;

  private:
    Jones2 channel_for(Bit bit, double beta_hat_rad) const;

    Scheme scheme_;
    LinkBudget budget_;
    MismatchAngle beta_;
    double sigma_e_ = 0.0; // rad
    double p_t_ = 0.0;
    double sigma2_ = 0.0;       // reporting value
    double sigma2_noise_ = 0.0; // 0 when noise_off
    double ask_delta_phi_ = 0.0;
    std::uint64_t master_seed_ = 0;
    bool profile_tracks_estimate_ = false; // scheme 2 with sigma_e > 0
    std::array<Jones2, 2> cached_channel_{};
};

/// Convenience wrapper building a fresh plan; prefer a TrialPlan when
/// running many trials.
Bit run_trial(const SimConfig &config, Bit bit, std::uint64_t trial_id);

/// Monte Carlo BER over config.trials transmissions with equiprobable
/// deterministic bits. OpenMP-parallel over trials; the estimate is
/// independent of the thread count. threads = 0 uses the runtime
/// default, threads = 1 is the serial reference.
BerEstimate estimate_ber(const SimConfig &config, int threads = 0);
BerEstimate estimate_ber(const TrialPlan &plan, long long trials, std::uint64_t master_seed,
                         int threads = 0);

/// Per mismatch angle: flat gamma_1, the closed-form gamma_2 and the
/// exact rounded-partition SNR from the noiseless composite channel, all
/// in dB. Series: "scheme1", "scheme2_theory", "scheme2_exact".
std::vector<CurvePoint> sweep_snr_vs_beta(const SimConfig &config,
                                          std::span<const double> beta_grid_deg);

/// Scheme plus mismatch angle, one BER curve of the area sweep.
struct SweepSeries {
    Scheme scheme = Scheme::Scheme1;
    double beta_deg = 0.0;
    std::string label;
};

/// Default curve set of the area sweep: scheme 1, scheme 2 at 0/10/45
/// degrees, both amplitude-keying detectors at the config's angle.
std::vector<SweepSeries> default_area_series(const SimConfig &config);

/// Monte Carlo BER per (area, series), with the closed-form theory
/// attached where one exists (schemes 1 and 2).
std::vector<CurvePoint> sweep_ber_vs_area(const SimConfig &config,
                                          std::span<const double> area_grid_m2,
                                          std::span<const SweepSeries> series, int threads = 0);

/// Monte Carlo BER of both schemes versus the mismatch-estimation error
/// std, at the config's area and angle.
std::vector<CurvePoint> sweep_ber_vs_sigma_e(const SimConfig &config,
                                             std::span<const double> sigma_e_grid_deg,
                                             int threads = 0);

/// Built-in grids mirroring the result figures.
std::vector<double> default_beta_grid_deg();
std::vector<double> default_area_grid_m2();
std::vector<double> default_sigma_e_grid_deg();

/// Columns x,series,y,y_theory,ci_low,ci_high; header row, '.' decimal
/// separator, '\n' line endings, empty fields where a value is absent.
void write_csv(const std::vector<CurvePoint> &points, const std::filesystem::path &path);
std::vector<CurvePoint> read_csv(const std::filesystem::path &path);

enum class YScale { Linear, Log10 };

/// Minimal line chart, one polyline per series. Log scale drops
/// non-positive y values.
void write_svg(const std::vector<CurvePoint> &points, const std::filesystem::path &path,
               YScale yscale, const std::string &x_label, const std::string &y_label);

/// Scene/budget assembly used by the sweeps; throws ConfigError or
/// GeometryError.
Scene scene_from_config(const SimConfig &config);

} // namespace polsim

#endif
