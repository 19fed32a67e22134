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

#include "polsim/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <omp.h>

#include <json.hpp>

#include "polsim/riscontrol.hpp"

namespace polsim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Stream ids per trial: even = receiver noise, odd = mismatch estimate.
constexpr std::uint64_t noise_stream(std::uint64_t trial) { return 2 * trial; }
constexpr std::uint64_t beta_stream(std::uint64_t trial) { return 2 * trial + 1; }

int resolve_threads(int threads)
{
    return threads > 0 ? threads : omp_get_max_threads();
}

} // namespace

std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::Scheme1:
        return "scheme1";
    case Scheme::Scheme2:
        return "scheme2";
    case Scheme::AskMatched:
        return "ask_matched";
    case Scheme::AskNoncoherent:
        return "ask_noncoherent";
    }
    return "?";
}

Scheme scheme_from_name(const std::string &name)
{
    static const std::map<std::string, Scheme> table{
        {"scheme1", Scheme::Scheme1},
        {"scheme2", Scheme::Scheme2},
        {"ask_matched", Scheme::AskMatched},
        {"ask_noncoherent", Scheme::AskNoncoherent}};
    const auto it = table.find(name);
    if (it == table.end())
        throw ConfigError("unknown scheme '" + name + "'");
    return it->second;
}

void SimConfig::validate() const
{
    if (!(carrier_freq_hz > 0.0))
        throw ConfigError("carrier_freq_hz must be positive");
    if (area_m2.has_value() == m_count.has_value())
        throw ConfigError("exactly one of area_m2 / m_count must be given");
    if (area_m2 && !(*area_m2 > 0.0))
        throw ConfigError("area_m2 must be positive");
    if (m_count && *m_count < 1)
        throw ConfigError("m_count must be at least 1");
    if (element_side_m && !(*element_side_m > 0.0))
        throw ConfigError("element_side_m must be positive");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (sigma_e_deg < 0.0)
        throw ConfigError("sigma_e_deg must be nonnegative");
    if (!std::isfinite(beta_deg) || !std::isfinite(tx_power_dbm) ||
        !std::isfinite(noise_power_dbm) || !std::isfinite(gain_tx_dbi) ||
        !std::isfinite(gain_rx_dbi))
        throw ConfigError("scene parameters must be finite");
}

Scene scene_from_config(const SimConfig &config)
{
    config.validate();
    Scene scene;
    scene.source = config.source;
    scene.receiver = config.receiver;
    scene.rf.carrier_freq_hz = config.carrier_freq_hz;
    scene.rf.tx_power_w = dbm_to_watts(config.tx_power_dbm);
    scene.rf.noise_power_w = dbm_to_watts(config.noise_power_dbm);
    scene.rf.gain_tx_lin = dbi_to_linear(config.gain_tx_dbi);
    scene.rf.gain_rx_lin = dbi_to_linear(config.gain_rx_dbi);
    scene.beta = MismatchAngle::from_degrees(config.beta_deg);

    const double side =
        config.element_side_m.value_or(0.5 * kSpeedOfLight / config.carrier_freq_hz);
    try {
        if (config.area_m2)
            scene.ris = build_ris_grid_side_from_area(*config.area_m2, side,
                                                      config.ris_center, config.ris_normal);
        else
            scene.ris = build_ris_grid_side(*config.m_count, side, config.ris_center,
                                            config.ris_normal);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return scene;
}

// ---------------------------------------------------------------------------
// JSON config

namespace {

nlohmann::json position_to_json(const Position3 &p)
{
    return nlohmann::json::array({p.x, p.y, p.z});
}

Position3 position_from_json(const nlohmann::json &j, const char *key)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(std::string(key) + " must be a [x, y, z] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

std::string config_to_json_text(const SimConfig &c)
{
    nlohmann::json j;
    j["source_position"] = position_to_json(c.source);
    j["receiver_position"] = position_to_json(c.receiver);
    j["ris_center"] = position_to_json(c.ris_center);
    j["ris_normal"] = position_to_json(c.ris_normal);
    j["carrier_freq_hz"] = c.carrier_freq_hz;
    j["gain_tx_dbi"] = c.gain_tx_dbi;
    j["gain_rx_dbi"] = c.gain_rx_dbi;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["noise_power_dbm"] = c.noise_power_dbm;
    if (c.element_side_m)
        j["element_side_m"] = *c.element_side_m;
    j["scheme"] = scheme_name(c.scheme);
    j["beta_deg"] = c.beta_deg;
    j["sigma_e_deg"] = c.sigma_e_deg;
    j["ask_delta_phi_deg"] = c.ask_delta_phi_deg;
    if (c.area_m2)
        j["area_m2"] = *c.area_m2;
    if (c.m_count)
        j["m_count"] = *c.m_count;
    j["trials"] = c.trials;
    j["master_seed"] = c.master_seed;
    if (c.gamma_override_db)
        j["gamma_override_db"] = *c.gamma_override_db;
    if (c.noise_off)
        j["noise_off"] = true;
    if (!c.beta_grid_deg.empty())
        j["beta_grid_deg"] = c.beta_grid_deg;
    if (!c.area_grid_m2.empty())
        j["area_grid_m2"] = c.area_grid_m2;
    if (!c.sigma_e_grid_deg.empty())
        j["sigma_e_grid_deg"] = c.sigma_e_grid_deg;
    return j.dump(2) + "\n";
}

SimConfig config_from_json_text(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");

    SimConfig c;
    // area/m_count are exclusive; a config that sets one overrides the
    // default area-less state.
    try {
        if (j.contains("source_position"))
            c.source = position_from_json(j["source_position"], "source_position");
        if (j.contains("receiver_position"))
            c.receiver = position_from_json(j["receiver_position"], "receiver_position");
        if (j.contains("ris_center"))
            c.ris_center = position_from_json(j["ris_center"], "ris_center");
        if (j.contains("ris_normal"))
            c.ris_normal = position_from_json(j["ris_normal"], "ris_normal");
        c.carrier_freq_hz = j.value("carrier_freq_hz", c.carrier_freq_hz);
        c.gain_tx_dbi = j.value("gain_tx_dbi", c.gain_tx_dbi);
        c.gain_rx_dbi = j.value("gain_rx_dbi", c.gain_rx_dbi);
        c.tx_power_dbm = j.value("tx_power_dbm", c.tx_power_dbm);
        c.noise_power_dbm = j.value("noise_power_dbm", c.noise_power_dbm);
        if (j.contains("element_side_m"))
            c.element_side_m = j["element_side_m"].get<double>();
        if (j.contains("scheme"))
            c.scheme = scheme_from_name(j["scheme"].get<std::string>());
        c.beta_deg = j.value("beta_deg", c.beta_deg);
        c.sigma_e_deg = j.value("sigma_e_deg", c.sigma_e_deg);
        c.ask_delta_phi_deg = j.value("ask_delta_phi_deg", c.ask_delta_phi_deg);
        if (j.contains("area_m2"))
            c.area_m2 = j["area_m2"].get<double>();
        if (j.contains("m_count"))
            c.m_count = j["m_count"].get<std::size_t>();
        c.trials = j.value("trials", c.trials);
        c.master_seed = j.value("master_seed", c.master_seed);
        if (j.contains("gamma_override_db"))
            c.gamma_override_db = j["gamma_override_db"].get<double>();
        c.noise_off = j.value("noise_off", c.noise_off);
        if (j.contains("beta_grid_deg"))
            c.beta_grid_deg = j["beta_grid_deg"].get<std::vector<double>>();
        if (j.contains("area_grid_m2"))
            c.area_grid_m2 = j["area_grid_m2"].get<std::vector<double>>();
        if (j.contains("sigma_e_grid_deg"))
            c.sigma_e_grid_deg = j["sigma_e_grid_deg"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

void save_config(const SimConfig &config, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write config file: " + path.string());
    out << config_to_json_text(config);
    if (!out)
        throw IoError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Monte Carlo engine

Bit trial_bit(std::uint64_t master_seed, std::uint64_t trial_id)
{
    const std::uint64_t h =
        splitmix64(splitmix64(master_seed ^ 0xB17C0DEDB17C0DEDull) + splitmix64(trial_id));
    return (std::popcount(h) & 1) != 0;
}

TrialPlan::TrialPlan(const SimConfig &config)
{
    config.validate();
    scheme_ = config.scheme;
    beta_ = MismatchAngle::from_degrees(config.beta_deg);
    sigma_e_ = config.sigma_e_deg * kDegToRad;
    ask_delta_phi_ = config.ask_delta_phi_deg * kDegToRad;
    master_seed_ = config.master_seed;
    p_t_ = dbm_to_watts(config.tx_power_dbm);
    sigma2_ = dbm_to_watts(config.noise_power_dbm);
    sigma2_noise_ = config.noise_off ? 0.0 : sigma2_;

    if (config.gamma_override_db) {
        // Synthetic flat budget pinning M eta sqrt(p_t) / sigma.
        std::size_t m;
        if (config.m_count) {
            m = *config.m_count;
        } else {
            const double side = config.element_side_m.value_or(
                0.5 * kSpeedOfLight / config.carrier_freq_hz);
            const long long rounded = std::llround(*config.area_m2 / (side * side));
            if (rounded < 1)
                throw ConfigError("area_m2 rounds to zero elements");
            m = static_cast<std::size_t>(rounded);
        }
        const double gamma = from_db(*config.gamma_override_db);
        budget_.eta = std::sqrt(gamma * sigma2_ / p_t_) / static_cast<double>(m);
        budget_.psi.assign(m, 0.0);
        budget_.mu1.assign(m, 0.0);
        budget_.mu2.assign(m, 0.0);
    } else {
        budget_ = link_budget(scene_from_config(config));
    }

    profile_tracks_estimate_ = (scheme_ == Scheme::Scheme2) && sigma_e_ > 0.0;
    for (const Bit bit : {false, true}) {
        PhaseProfile profile;
        switch (scheme_) {
        case Scheme::Scheme1:
            profile = scheme1_profile(budget_.psi, bit);
            break;
        case Scheme::Scheme2:
            profile = scheme2_profile(budget_.psi, beta_, bit);
            break;
        case Scheme::AskMatched:
        case Scheme::AskNoncoherent:
            profile = ask_profile(budget_.psi, bit, ask_delta_phi_);
            break;
        }
        cached_channel_[bit ? 1 : 0] = compose_channel_fast(profile, budget_, beta_);
    }
}

Snr TrialPlan::gamma1() const
{
    return snr_scheme1(m_count(), budget_.eta, p_t_, sigma2_);
}

Jones2 TrialPlan::channel_for(Bit bit, double beta_hat_rad) const
{
    if (!profile_tracks_estimate_)
        return cached_channel_[bit ? 1 : 0];
    const PhaseProfile profile =
        scheme2_profile(budget_.psi, MismatchAngle{beta_hat_rad}, bit);
    return compose_channel_fast(profile, budget_, beta_);
}

Bit TrialPlan::run_trial(Bit bit, std::uint64_t trial_id) const
{
    double beta_hat = beta_.rad;
    if (sigma_e_ > 0.0 && scheme_ != Scheme::AskNoncoherent) {
        Rng rng(master_seed_, beta_stream(trial_id));
        beta_hat = perturb_beta(beta_, sigma_e_, rng).rad;
    }

    const Jones2 h = channel_for(bit, beta_hat);
    Rng rng(master_seed_, noise_stream(trial_id));
    const Jones2 w = awgn(rng, NoiseModel{sigma2_noise_});
    const Jones2 y = receive(h, p_t_, w);

    switch (scheme_) {
    case Scheme::Scheme1:
        return detect_max_power(equalize(y, MismatchAngle{beta_hat}));
    case Scheme::Scheme2:
        return detect_max_power(y);
    case Scheme::AskMatched:
        return ask_decide(ask_matched_statistic(y, ask_delta_phi_, MismatchAngle{beta_hat}),
                          m_count(), budget_.eta, p_t_);
    case Scheme::AskNoncoherent:
        return ask_decide(ask_noncoherent_statistic(y), m_count(), budget_.eta, p_t_);
    }
    return bit; // unreachable
}

Bit run_trial(const SimConfig &config, Bit bit, std::uint64_t trial_id)
{
    return TrialPlan(config).run_trial(bit, trial_id);
}

BerEstimate wilson_interval(long long errors, long long trials)
{
    const double z = 1.959963984540054; // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    BerEstimate est;
    est.errors = errors;
    est.trials = trials;
    est.ber = p;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    return est;
}

BerEstimate estimate_ber(const TrialPlan &plan, long long trials, std::uint64_t master_seed,
                         int threads)
{
    long long errors = 0;
    const int nt = resolve_threads(threads);
#pragma omp parallel for reduction(+ : errors) schedule(static) num_threads(nt)
    for (long long i = 0; i < trials; ++i) {
        const auto id = static_cast<std::uint64_t>(i);
        const Bit sent = trial_bit(master_seed, id);
        if (plan.run_trial(sent, id) != sent)
            ++errors;
    }
    return wilson_interval(errors, trials);
}

BerEstimate estimate_ber(const SimConfig &config, int threads)
{
    const TrialPlan plan(config);
    return estimate_ber(plan, config.trials, config.master_seed, threads);
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<double> default_beta_grid_deg()
{
    std::vector<double> grid;
    for (int b = 0; b <= 180; ++b)
        grid.push_back(static_cast<double>(b));
    return grid;
}

std::vector<double> default_area_grid_m2()
{
    std::vector<double> grid;
    for (int i = 0; i <= 13; ++i)
        grid.push_back(0.45 + 0.05 * i);
    return grid;
}

std::vector<double> default_sigma_e_grid_deg() { return {0.0, 4.0, 8.0}; }

std::vector<CurvePoint> sweep_snr_vs_beta(const SimConfig &config,
                                          std::span<const double> beta_grid_deg)
{
    SimConfig base = config;
    base.scheme = Scheme::Scheme2; // plan scheme is irrelevant here
    const TrialPlan plan(base);
    const LinkBudget &budget = plan.budget();
    const std::size_t m = plan.m_count();
    const double p_t = plan.tx_power_w();
    const double sigma2 = plan.noise_power_w();
    const double gamma1_db = to_db(plan.gamma1().gamma);

    std::vector<CurvePoint> points;
    points.reserve(3 * beta_grid_deg.size());
    for (const double beta_deg : beta_grid_deg) {
        const MismatchAngle beta = MismatchAngle::from_degrees(beta_deg);
        points.push_back({beta_deg, "scheme1", gamma1_db, {}, {}, {}});
        points.push_back(
            {beta_deg, "scheme2_theory",
             to_db(snr_scheme2(m, budget.eta, p_t, sigma2, beta).gamma), {}, {}, {}});

        // Rounded-partition SNR from the noiseless composite channel,
        // averaged over the two bits (they swap under 90 degree shifts).
        double acc = 0.0;
        for (const Bit bit : {false, true}) {
            const PhaseProfile profile = scheme2_profile(budget.psi, beta, bit);
            const Jones2 h = compose_channel_fast(profile, budget, beta);
            const double target = bit ? std::norm(h.v) : std::norm(h.h);
            acc += target * p_t / sigma2;
        }
        points.push_back({beta_deg, "scheme2_exact", to_db(0.5 * acc), {}, {}, {}});
    }
    return points;
}

std::vector<SweepSeries> default_area_series(const SimConfig &config)
{
    return {{Scheme::Scheme1, config.beta_deg, "scheme1"},
            {Scheme::Scheme2, 0.0, "scheme2_beta0"},
            {Scheme::Scheme2, 10.0, "scheme2_beta10"},
            {Scheme::Scheme2, 45.0, "scheme2_beta45"},
            {Scheme::AskMatched, config.beta_deg, "ask_matched"},
            {Scheme::AskNoncoherent, config.beta_deg, "ask_noncoherent"}};
}

std::vector<CurvePoint> sweep_ber_vs_area(const SimConfig &config,
                                          std::span<const double> area_grid_m2,
                                          std::span<const SweepSeries> series, int threads)
{
    std::vector<CurvePoint> points;
    points.reserve(area_grid_m2.size() * series.size());
    for (const double area : area_grid_m2) {
        for (const SweepSeries &s : series) {
            SimConfig cfg = config;
            cfg.area_m2 = area;
            cfg.m_count.reset();
            cfg.scheme = s.scheme;
            cfg.beta_deg = s.beta_deg;
            const TrialPlan plan(cfg);
            const BerEstimate est =
                estimate_ber(plan, cfg.trials, cfg.master_seed, threads);

            std::optional<double> theory;
            if (s.scheme == Scheme::Scheme1)
                theory = ber_theoretical(plan.gamma1());
            else if (s.scheme == Scheme::Scheme2)
                theory = ber_theoretical(snr_scheme2(plan.m_count(), plan.eta(),
                                                     plan.tx_power_w(), plan.noise_power_w(),
                                                     plan.beta()));
            points.push_back({area, s.label, est.ber, theory, est.ci_low, est.ci_high});
        }
    }
    return points;
}

std::vector<CurvePoint> sweep_ber_vs_sigma_e(const SimConfig &config,
                                             std::span<const double> sigma_e_grid_deg,
                                             int threads)
{
    std::vector<CurvePoint> points;
    for (const double sigma_e : sigma_e_grid_deg) {
        for (const Scheme scheme : {Scheme::Scheme1, Scheme::Scheme2}) {
            SimConfig cfg = config;
            cfg.scheme = scheme;
            cfg.sigma_e_deg = sigma_e;
            const BerEstimate est = estimate_ber(cfg, threads);
            points.push_back(
                {sigma_e, scheme_name(scheme), est.ber, {}, est.ci_low, est.ci_high});
        }
    }
    return points;
}

// ---------------------------------------------------------------------------
// CSV / SVG

namespace {

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::optional<double> parse_opt_double(const std::string &field, const std::string &path)
{
    if (field.empty())
        return std::nullopt;
    char *end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str())
        throw IoError("bad numeric field '" + field + "' in " + path);
    return v;
}

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

void write_csv(const std::vector<CurvePoint> &points, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary); // keep '\n' endings everywhere
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << "x,series,y,y_theory,ci_low,ci_high\n";
    for (const CurvePoint &p : points) {
        out << fmt_double(p.x) << ',' << p.series << ',' << fmt_double(p.y) << ',';
        if (p.y_theory)
            out << fmt_double(*p.y_theory);
        out << ',';
        if (p.ci_low)
            out << fmt_double(*p.ci_low);
        out << ',';
        if (p.ci_high)
            out << fmt_double(*p.ci_high);
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::vector<CurvePoint> read_csv(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) !=
                                       std::vector<std::string>{"x", "series", "y", "y_theory",
                                                                "ci_low", "ci_high"})
        throw IoError("unexpected CSV header in " + path.string());

    std::vector<CurvePoint> points;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6)
            throw IoError("malformed CSV row in " + path.string());
        CurvePoint p;
        p.x = parse_opt_double(fields[0], path.string()).value();
        p.series = fields[1];
        p.y = parse_opt_double(fields[2], path.string()).value();
        p.y_theory = parse_opt_double(fields[3], path.string());
        p.ci_low = parse_opt_double(fields[4], path.string());
        p.ci_high = parse_opt_double(fields[5], path.string());
        points.push_back(std::move(p));
    }
    return points;
}

namespace {

const char *series_color(std::size_t i)
{
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

} // namespace

void write_svg(const std::vector<CurvePoint> &points, const std::filesystem::path &path,
               YScale yscale, const std::string &x_label, const std::string &y_label)
{
    const double width = 820.0, height = 540.0;
    const double ml = 70.0, mr = 170.0, mt = 20.0, mb = 55.0;
    const bool logy = yscale == YScale::Log10;

    auto yval = [&](double y) { return logy ? std::log10(y) : y; };

    // Ordered series names and the data ranges.
    std::vector<std::string> series;
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool have = false;
    for (const CurvePoint &p : points) {
        if (std::find(series.begin(), series.end(), p.series) == series.end())
            series.push_back(p.series);
        for (const std::optional<double> y :
             {std::optional<double>(p.y), p.y_theory}) {
            if (!y || (logy && *y <= 0.0))
                continue;
            const double t = yval(*y);
            if (!have) {
                xmin = xmax = p.x;
                ymin = ymax = t;
                have = true;
            } else {
                xmin = std::min(xmin, p.x);
                xmax = std::max(xmax, p.x);
                ymin = std::min(ymin, t);
                ymax = std::max(ymax, t);
            }
        }
        xmin = have ? std::min(xmin, p.x) : p.x;
        xmax = have ? std::max(xmax, p.x) : p.x;
    }
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    if (ymax <= ymin)
        ymax = ymin + 1.0;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double t) {
        return height - mb - (t - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame and ticks.
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double x = xmin + (xmax - xmin) * i / nticks;
        char lbl[32];
        std::snprintf(lbl, sizeof(lbl), "%.4g", x);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << height - mb << "\" x2=\"" << px(x)
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\">" << lbl << "</text>\n";
    }
    if (logy) {
        for (int e = static_cast<int>(std::floor(ymin)); e <= std::ceil(ymax); ++e) {
            if (e < ymin - 1e-9 || e > ymax + 1e-9)
                continue;
            out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(e) << "\" x2=\"" << ml
                << "\" y2=\"" << py(e) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << ml - 8 << "\" y=\"" << py(e) + 4
                << "\" text-anchor=\"end\">1e" << e << "</text>\n";
        }
    } else {
        for (int i = 0; i <= nticks; ++i) {
            const double t = ymin + (ymax - ymin) * i / nticks;
            char lbl[32];
            std::snprintf(lbl, sizeof(lbl), "%.4g", t);
            out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << ml
                << "\" y2=\"" << py(t) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << ml - 8 << "\" y=\"" << py(t) + 4
                << "\" text-anchor=\"end\">" << lbl << "</text>\n";
        }
    }
    out << "<text x=\"" << ml + (width - ml - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + (height - mt - mb) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << mt + (height - mt - mb) / 2 << ")\">" << y_label << "</text>\n";

    // One polyline per series, plus a dashed theory overlay when present.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const std::string &name = series[si];
        std::string sim_path, theory_path;
        for (const CurvePoint &p : points) {
            if (p.series != name)
                continue;
            if (!(logy && p.y <= 0.0)) {
                sim_path += sim_path.empty() ? "M" : " L";
                sim_path += fmt_double(px(p.x)) + " " + fmt_double(py(yval(p.y)));
            }
            if (p.y_theory && !(logy && *p.y_theory <= 0.0)) {
                theory_path += theory_path.empty() ? "M" : " L";
                theory_path +=
                    fmt_double(px(p.x)) + " " + fmt_double(py(yval(*p.y_theory)));
            }
        }
        const char *color = series_color(si);
        if (!sim_path.empty())
            out << "<path d=\"" << sim_path << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\"/>\n";
        if (!theory_path.empty())
            out << "<path d=\"" << theory_path << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.2\" stroke-dasharray=\"5 4\"/>\n";
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
        out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly << "\" x2=\""
            << width - mr + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.6\"/>\n";
        out << "<text x=\"" << width - mr + 40 << "\" y=\"" << ly + 4 << "\">" << name
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace polsim
