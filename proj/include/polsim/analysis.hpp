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

#ifndef POLSIM_ANALYSIS_HPP
#define POLSIM_ANALYSIS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "polsim/polcore.hpp"

namespace polsim {

/// Received SNR at the targeted polarized antenna, linear power ratio.
struct Snr {
    double gamma = 0.0;
};

/// Receiver-equalized scheme: gamma_1 = M^2 eta^2 p_t / sigma^2.
inline Snr snr_scheme1(std::size_t m_count, double eta, double p_t, double sigma2)
{
    const double me = static_cast<double>(m_count) * eta;
    return {me * me * p_t / sigma2};
}

/// Surface-precoded scheme: gamma_2 = gamma_1 / (1 + |sin 2 beta|).
/// Approximation to the rounded partition, exact when sin 2 beta = 0.
inline Snr snr_scheme2(std::size_t m_count, double eta, double p_t, double sigma2,
                       MismatchAngle beta)
{
    const double g1 = snr_scheme1(m_count, eta, p_t, sigma2).gamma;
    return {g1 / (1.0 + std::abs(std::sin(2.0 * beta.rad)))};
}

/// Non-coherent binary orthogonal detection: BER = (1/2) e^{-gamma/2}.
inline double ber_theoretical(Snr snr) { return 0.5 * std::exp(-0.5 * snr.gamma); }

inline double to_db(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("to_db: non-positive input");
    return 10.0 * std::log10(x);
}

inline double from_db(double x) { return std::pow(10.0, x / 10.0); }

} // namespace polsim

#endif
