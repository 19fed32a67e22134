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

#include "polsim/riscontrol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polsim {

PhaseProfile scheme1_profile(std::span<const double> psi, Bit b)
{
    const std::size_t m = psi.size();
    PhaseProfile p;
    p.phi1.resize(m);
    p.phi2.resize(m);
    p.on.assign(m, 1);
    const double flip = b ? 0.0 : std::numbers::pi;
    for (std::size_t i = 0; i < m; ++i) {
        p.phi1[i] = -psi[i];
        p.phi2[i] = p.phi1[i] + flip;
    }
    return p;
}

ElementPartition partition(std::size_t m_count, MismatchAngle beta, Bit b)
{
    if (m_count < 1)
        throw std::invalid_argument("partition needs at least one element");
    // M / (1 + |tan b|) = M |cos b| / (|cos b| + |sin b|), which stays
    // finite at the tan/cot poles and reproduces their limits.
    const double c = std::abs(std::cos(beta.rad));
    const double s = std::abs(std::sin(beta.rad));
    const double md = static_cast<double>(m_count);
    const double x = b ? md * c / (c + s) : md * s / (c + s);
    const long long lv =
        std::clamp<long long>(std::llround(x), 0, static_cast<long long>(m_count));
    return {static_cast<std::size_t>(lv), m_count - static_cast<std::size_t>(lv)};
}

PhaseProfile scheme2_profile(std::span<const double> psi, MismatchAngle beta_hat, Bit b)
{
    const std::size_t m = psi.size();
    const ElementPartition part = partition(m, beta_hat, b);
    // Offset that lines the vertically exciting head up with the
    // horizontal tail once both pass through the mismatch rotation.
    const double sgn = b ? -sign_tan(beta_hat.rad) : sign_tan(beta_hat.rad);
    const double offset = 0.5 * std::numbers::pi * (1.0 + sgn);

    PhaseProfile p;
    p.phi1.resize(m);
    p.phi2.resize(m);
    p.on.assign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < part.l_v) {
            p.phi1[i] = -psi[i] + offset;
            p.phi2[i] = p.phi1[i]; // vertical: delta_phi = 0
        } else {
            p.phi1[i] = -psi[i];
            p.phi2[i] = p.phi1[i] + std::numbers::pi; // horizontal
        }
    }
    return p;
}

PhaseProfile ask_profile(std::span<const double> psi, Bit b, double delta_phi_common)
{
    const std::size_t m = psi.size();
    PhaseProfile p;
    if (!b) {
        p.phi1.assign(m, 0.0);
        p.phi2.assign(m, 0.0);
        p.on.assign(m, 0);
        return p;
    }
    p.phi1.resize(m);
    p.phi2.resize(m);
    p.on.assign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        p.phi1[i] = -psi[i];
        p.phi2[i] = p.phi1[i] + delta_phi_common;
    }
    return p;
}

} // namespace polsim
