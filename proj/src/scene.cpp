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

#include "polsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polsim {

namespace {

// Surface-local right-handed frame: ex = normal, ez = in-plane vertical,
// ey = ez x ex completes it.
struct LocalFrame {
    Position3 ex, ey, ez;
};

LocalFrame local_frame(const Position3 &normal)
{
    const Position3 n = normalized(normal);
    const Position3 up{0.0, 0.0, 1.0};
    const Position3 horiz = cross(up, n);
    const double len = vnorm(horiz);
    if (len < 1e-12)
        throw GeometryError("surface normal is parallel to the vertical axis");
    const Position3 ey = (1.0 / len) * horiz;
    const Position3 ez = cross(n, ey);
    return {n, ey, ez};
}

std::array<double, 3> to_local(const LocalFrame &f, const Position3 &v)
{
    return {dot(v, f.ex), dot(v, f.ey), dot(v, f.ez)};
}

RisLayout make_grid(std::size_t m_count, double side, const Position3 &center,
                    const Position3 &normal)
{
    if (m_count < 1)
        throw std::invalid_argument("RIS grid needs at least one element");
    if (!(side > 0.0))
        throw std::invalid_argument("RIS element side must be positive");

    const LocalFrame f = local_frame(normal);
    const auto cols = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(m_count))));
    const std::size_t rows = (m_count + cols - 1) / cols;

    RisLayout layout;
    layout.m_count = m_count;
    layout.element_side_m = side;
    layout.center = center;
    layout.normal = f.ex;
    layout.element_coords.reserve(m_count);
    // Row-major fill over a cols x rows lattice centered on `center`.
    const double oc = 0.5 * (static_cast<double>(cols) - 1.0);
    const double orow = 0.5 * (static_cast<double>(rows) - 1.0);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double col = static_cast<double>(m % cols);
        const double row = static_cast<double>(m / cols);
        const double oh = (col - oc) * side;
        const double ov = (orow - row) * side;
        layout.element_coords.push_back(center + oh * f.ey + ov * f.ez);
    }
    return layout;
}

} // namespace

Position3 normalized(const Position3 &a)
{
    const double n = vnorm(a);
    if (!(n > 0.0))
        throw GeometryError("cannot normalize a zero-length vector");
    return (1.0 / n) * a;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double dbi_to_linear(double dbi) { return std::pow(10.0, dbi / 10.0); }

RisLayout build_ris_grid_side(std::size_t m_count, double element_side_m,
                              const Position3 &center, const Position3 &normal)
{
    return make_grid(m_count, element_side_m, center, normal);
}

RisLayout build_ris_grid_side_from_area(double area_m2, double element_side_m,
                                        const Position3 &center, const Position3 &normal)
{
    if (!(element_side_m > 0.0))
        throw std::invalid_argument("RIS element side must be positive");
    const double delta = element_side_m * element_side_m;
    const long long m = std::llround(area_m2 / delta);
    if (m < 1)
        throw std::invalid_argument("RIS area " + std::to_string(area_m2) +
                                    " m^2 rounds to zero elements");
    return make_grid(static_cast<std::size_t>(m), element_side_m, center, normal);
}

RisLayout build_ris_grid(std::size_t m_count, double carrier_freq_hz, const Position3 &center,
                         const Position3 &normal)
{
    if (!(carrier_freq_hz > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
    return make_grid(m_count, 0.5 * kSpeedOfLight / carrier_freq_hz, center, normal);
}

RisLayout build_ris_grid_from_area(double area_m2, double carrier_freq_hz,
                                   const Position3 &center, const Position3 &normal)
{
    if (!(carrier_freq_hz > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
    return build_ris_grid_side_from_area(area_m2, 0.5 * kSpeedOfLight / carrier_freq_hz,
                                         center, normal);
}

SceneGeometry geometry_angles(const Scene &scene)
{
    const LocalFrame f = local_frame(scene.ris.normal);

    auto endpoint = [&](const Position3 &p, const char *what, double &r, double &zeta,
                        LocalDirection &dir) {
        const Position3 d = p - scene.ris.center;
        r = vnorm(d);
        if (!(r > 0.0))
            throw GeometryError(std::string(what) + " coincides with the surface center");
        const Position3 u = (1.0 / r) * d;
        const double cz = std::clamp(dot(u, f.ex), -1.0, 1.0);
        zeta = std::acos(cz);
        if (!(cz > 0.0))
            throw GeometryError(std::string(what) + " lies on or behind the surface plane");
        dir.theta = std::asin(std::clamp(dot(u, f.ez), -1.0, 1.0));
        dir.phi = std::atan2(dot(u, f.ey), dot(u, f.ex));
    };

    SceneGeometry g;
    endpoint(scene.source, "source", g.r1_m, g.zeta1, g.aoa);
    endpoint(scene.receiver, "receiver", g.r2_m, g.zeta2, g.aod);
    return g;
}

double path_loss_eta(const Scene &scene, const SceneGeometry &geom)
{
    const double half_pi = 0.5 * std::numbers::pi;
    if (!(geom.zeta1 >= 0.0 && geom.zeta1 < half_pi && geom.zeta2 >= 0.0 &&
          geom.zeta2 < half_pi))
        throw GeometryError("plate scattering model needs both angles in [0, pi/2)");
    const double delta = scene.ris.element_area();
    const double gains = std::sqrt(scene.rf.gain_tx_lin * scene.rf.gain_rx_lin);
    const double spread = 4.0 * std::numbers::pi * geom.r1_m * geom.r2_m;
    const double pattern = std::pow(std::cos(geom.zeta1) * std::cos(geom.zeta2), kPlateExponent);
    return delta * gains / spread * pattern;
}

std::array<double, 3> wave_vector(double theta, double phi, double carrier_freq_hz)
{
    const double k = 2.0 * std::numbers::pi * carrier_freq_hz / kSpeedOfLight;
    return {k * std::cos(phi) * std::cos(theta), k * std::sin(phi) * std::cos(theta),
            k * std::sin(theta)};
}

double element_phase(const std::array<double, 3> &g_local, const std::array<double, 3> &q)
{
    return g_local[0] * q[0] + g_local[1] * q[1] + g_local[2] * q[2];
}

LinkBudget link_budget(const Scene &scene)
{
    LinkBudget budget;
    budget.geom = geometry_angles(scene);
    budget.eta = path_loss_eta(scene, budget.geom);

    const LocalFrame f = local_frame(scene.ris.normal);
    const double fc = scene.rf.carrier_freq_hz;
    const auto q1 = wave_vector(budget.geom.aoa.theta, budget.geom.aoa.phi, fc);
    const auto q2 = wave_vector(budget.geom.aod.theta, budget.geom.aod.phi, fc);

    const std::size_t m = scene.ris.m_count;
    budget.mu1.resize(m);
    budget.mu2.resize(m);
    budget.psi.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto g = to_local(f, scene.ris.element_coords[i] - scene.ris.center);
        budget.mu1[i] = element_phase(g, q1);
        budget.mu2[i] = element_phase(g, q2);
        budget.psi[i] = budget.mu1[i] + budget.mu2[i];
    }
    return budget;
}

namespace {

void check_profile(const PhaseProfile &profile, std::size_t m)
{
    if (profile.phi1.size() != m || profile.phi2.size() != m || profile.on.size() != m)
        throw std::invalid_argument("phase profile length does not match the element count");
}

} // namespace

Jones2 compose_channel_bruteforce(const PhaseProfile &profile, const LinkBudget &budget,
                                  MismatchAngle beta)
{
    const std::size_t m = budget.m_count();
    check_profile(profile, m);

    const double rho = std::sqrt(budget.eta); // rho1 = rho2 = sqrt(eta)
    const double alpha = 0.25 * std::numbers::pi - beta.rad;
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);

    Jones2 h;
    for (std::size_t i = 0; i < m; ++i) {
        if (!profile.on[i])
            continue;
        const Mat2c h2 = rho * std::polar(1.0, budget.mu2[i]) * Mat2c{ca, sa, sa, -ca};
        const Mat2c phase{std::polar(1.0, profile.phi1[i]), 0.0, 0.0,
                          std::polar(1.0, profile.phi2[i])};
        const cplx f1 = rho / std::numbers::sqrt2 * std::polar(1.0, budget.mu1[i]);
        const Jones2 h1{f1, f1};
        h = h + h2 * (phase * h1);
    }
    return h;
}

Jones2 compose_channel_fast(const PhaseProfile &profile, const LinkBudget &budget,
                            MismatchAngle beta)
{
    const std::size_t m = budget.m_count();
    check_profile(profile, m);

    Jones2 u;
    for (std::size_t i = 0; i < m; ++i) {
        if (!profile.on[i])
            continue;
        const cplx w = std::polar(1.0, budget.psi[i] + profile.phi1[i]);
        u = u + w * element_jones(profile.delta_phi(i));
    }
    u = budget.eta * u;
    return mismatch_matrix(beta) * u;
}

} // namespace polsim
