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

#ifndef POLSIM_RISCONTROL_HPP
#define POLSIM_RISCONTROL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polsim/polcore.hpp"

namespace polsim {

/// Per-element phase pairs of the surface. phi1 drives the slant +45
/// state, phi2 the slant -45 state; their difference selects the
/// reflected polarization. Elements with on[m] == 0 absorb the incident
/// wave and contribute nothing (amplitude keying).
struct PhaseProfile {
    std::vector<double> phi1;
    std::vector<double> phi2;
    std::vector<std::uint8_t> on;

    std::size_t size() const { return phi1.size(); }
    double delta_phi(std::size_t m) const { return phi2[m] - phi1[m]; }
};

/// Split of the surface into a vertically exciting head and a
/// horizontally exciting tail, l_v + l_h = M.
struct ElementPartition {
    std::size_t l_v = 0;
    std::size_t l_h = 0;
};

/// Sign convention used by the precoder phase offset: sign(tan b) with
/// sign(0) := +1, evaluated pole-free as sign(sin b * cos b).
inline double sign_tan(double beta_rad)
{
    return std::sin(beta_rad) * std::cos(beta_rad) < 0.0 ? -1.0 : 1.0;
}

/// Beam-steer and flip the excited state between vertical (b = 1) and
/// horizontal (b = 0): phi1 = -psi, phi2 = phi1 + pi (1 - b).
PhaseProfile scheme1_profile(std::span<const double> psi, Bit b);

/// Number of vertically exciting elements so the composite channel
/// vanishes on the off-target antenna. Rounds half away from zero; the
/// tan/cot poles fall out of the sin/cos formulation analytically.
ElementPartition partition(std::size_t m_count, MismatchAngle beta, Bit b);

/// Mismatch-precoded profile: the first l_v elements excite vertical with
/// a bit-dependent phase offset, the rest excite horizontal. beta_hat is
/// the surface's estimate of the mismatch angle.
PhaseProfile scheme2_profile(std::span<const double> psi, MismatchAngle beta_hat, Bit b);

/// On/off keying baseline: b = 0 turns every element off, b = 1
/// beam-steers with a common phase difference delta_phi_common.
PhaseProfile ask_profile(std::span<const double> psi, Bit b, double delta_phi_common);

} // namespace polsim

#endif
