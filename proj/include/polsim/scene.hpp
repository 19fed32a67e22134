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

#ifndef POLSIM_SCENE_HPP
#define POLSIM_SCENE_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polsim/polcore.hpp"
#include "polsim/riscontrol.hpp"

namespace polsim {

/// Source or receiver lies on or behind the reflecting plane, or the
/// surface orientation is degenerate.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Cartesian position or direction, meters.
struct Position3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Position3 operator-(const Position3 &a, const Position3 &b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Position3 operator+(const Position3 &a, const Position3 &b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Position3 operator*(double s, const Position3 &a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(const Position3 &a, const Position3 &b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Position3 cross(const Position3 &a, const Position3 &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double vnorm(const Position3 &a) { return std::sqrt(dot(a, a)); }
Position3 normalized(const Position3 &a);

/// RF front-end parameters, SI units (watts, Hz, linear gains).
struct RfParams {
    double carrier_freq_hz = 3e9;
    double tx_power_w = 0.0;    // p_t
    double noise_power_w = 0.0; // sigma^2, total complex variance per antenna
    double gain_tx_lin = 1.0;   // G_t
    double gain_rx_lin = 1.0;   // G_r

    double wavelength() const { return kSpeedOfLight / carrier_freq_hz; }
};

/// Planar grid of reflecting elements. Elements are squares of side
/// element_side_m laid out on an element_side_m pitch (they abut), the
/// grid axes are the global vertical and the in-plane horizontal
/// direction, centered on `center` and orthogonal to `normal`.
struct RisLayout {
    std::size_t m_count = 0;
    double element_side_m = 0.0;
    std::vector<Position3> element_coords; // global coordinates g_m
    Position3 center;
    Position3 normal; // unit

    double element_area() const { return element_side_m * element_side_m; } // Delta
    double surface_area() const { return static_cast<double>(m_count) * element_area(); }
};

/// Full propagation scene: geometry, RF parameters and the true
/// polarization mismatch angle of the receiver.
struct Scene {
    Position3 source;
    Position3 receiver;
    RisLayout ris;
    RfParams rf;
    MismatchAngle beta;
};

/// Elevation/azimuth of a direction in the surface-local frame
/// (x = normal, z = vertical), radians.
struct LocalDirection {
    double theta = 0.0; // elevation
    double phi = 0.0;   // azimuth
};

/// Distances and angles of the two hops, measured from the surface center.
struct SceneGeometry {
    double r1_m = 0.0;  // surface -> source
    double r2_m = 0.0;  // surface -> receiver
    double zeta1 = 0.0; // angle of incidence off the surface normal
    double zeta2 = 0.0; // angle of departure off the surface normal
    LocalDirection aoa; // toward the source
    LocalDirection aod; // toward the receiver
};

/// Large-scale amplitude and per-element two-hop phases of the link.
/// eta is the per-element amplitude product of the two hops, psi[m] the
/// phase of the two-hop channel through element m. mu1/mu2 keep the
/// per-hop split so the per-element channel chain can be evaluated on
/// its own.
struct LinkBudget {
    double eta = 0.0;
    std::vector<double> psi;
    std::vector<double> mu1;
    std::vector<double> mu2;
    SceneGeometry geom;

    std::size_t m_count() const { return psi.size(); }
};

/// 10^((p - 30) / 10)
double dbm_to_watts(double dbm);

/// 10^(dBi / 10)
double dbi_to_linear(double dbi);

/// Square grid with M = round(area / Delta) elements, Delta = (lambda/2)^2.
RisLayout build_ris_grid_from_area(double area_m2, double carrier_freq_hz,
                                   const Position3 &center, const Position3 &normal);

/// Square grid with an explicit element count.
RisLayout build_ris_grid(std::size_t m_count, double carrier_freq_hz, const Position3 &center,
                         const Position3 &normal);

/// Grid builders with a custom element side (elements abut, pitch = side).
RisLayout build_ris_grid_side(std::size_t m_count, double element_side_m,
                              const Position3 &center, const Position3 &normal);
RisLayout build_ris_grid_side_from_area(double area_m2, double element_side_m,
                                        const Position3 &center, const Position3 &normal);

/// Distances, off-normal angles and local arrival/departure directions.
/// Throws GeometryError when either endpoint is on or behind the plane.
SceneGeometry geometry_angles(const Scene &scene);

/// Plate-scattering large-scale amplitude of one element,
/// eta = (Delta sqrt(Gt Gr) / (4 pi r1 r2)) [cos z1 cos z2]^q_o.
double path_loss_eta(const Scene &scene, const SceneGeometry &geom);

/// Exponent of the element radiation pattern for a half-wavelength
/// square element.
inline constexpr double kPlateExponent = 0.285; // q_o

/// (2 pi / lambda) [cos phi cos theta, sin phi cos theta, sin theta]
std::array<double, 3> wave_vector(double theta, double phi, double carrier_freq_hz);

/// Plane-wave phase of an element at local coordinates g: mu = g . q.
double element_phase(const std::array<double, 3> &g_local, const std::array<double, 3> &q);

/// Full link budget of a scene: eta plus per-element phases of both hops.
LinkBudget link_budget(const Scene &scene);

/// Composite channel summed element by element through the explicit
/// per-element chain (second-hop matrix x phase matrix x first-hop
/// vector). Serial reference path; the oracle for compose_channel_fast.
Jones2 compose_channel_bruteforce(const PhaseProfile &profile, const LinkBudget &budget,
                                  MismatchAngle beta);

/// Composite channel through the simplified form h = A(beta) u with u the
/// phased sum of per-element reflected states.
Jones2 compose_channel_fast(const PhaseProfile &profile, const LinkBudget &budget,
                            MismatchAngle beta);

} // namespace polsim

#endif
