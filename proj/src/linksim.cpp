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

#include "polsim/linksim.hpp"

#include <cmath>
#include <stdexcept>

namespace polsim {

Jones2 awgn(Rng &rng, const NoiseModel &noise)
{
    if (noise.sigma2_w < 0.0)
        throw std::invalid_argument("noise variance must be nonnegative");
    const double s = std::sqrt(0.5 * noise.sigma2_w); // per-quadrature std
    const double vr = rng.normal();
    const double vi = rng.normal();
    const double hr = rng.normal();
    const double hi = rng.normal();
    return {cplx{s * vr, s * vi}, cplx{s * hr, s * hi}};
}

Jones2 receive(const Jones2 &h, double p_t, const Jones2 &w)
{
    return std::sqrt(p_t) * h + w;
}

Jones2 equalize(const Jones2 &y, MismatchAngle beta_hat)
{
    return mismatch_matrix(beta_hat).transpose() * y;
}

Bit detect_max_power(const Jones2 &s)
{
    return std::norm(s.v) >= std::norm(s.h);
}

MismatchAngle perturb_beta(MismatchAngle beta, double sigma_e, Rng &rng)
{
    if (sigma_e < 0.0)
        throw std::invalid_argument("estimation error std must be nonnegative");
    return {beta.rad + sigma_e * rng.normal()};
}

DetectorStat ask_matched_statistic(const Jones2 &y, double delta_phi, MismatchAngle beta_hat)
{
    const Jones2 h_o = mismatch_matrix(beta_hat) * (2.0 * element_jones(delta_phi));
    return {0.5 * std::abs(cdot(h_o, y))}; // ||h_o|| = 2 for every delta_phi
}

DetectorStat ask_noncoherent_statistic(const Jones2 &y)
{
    return {y.norm()};
}

Bit ask_decide(DetectorStat stat, std::size_t m_count, double eta, double p_t)
{
    const double threshold = 0.5 * static_cast<double>(m_count) * eta * std::sqrt(p_t);
    return stat.value >= threshold;
}

} // namespace polsim
