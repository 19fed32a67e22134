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

#ifndef POLSIM_LINKSIM_HPP
#define POLSIM_LINKSIM_HPP

#include <cstddef>
#include <cstdint>

#include "polsim/polcore.hpp"

namespace polsim {

/// SplitMix64 output mixer.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic pseudo-random stream addressed by (master_seed,
/// stream_id): a SplitMix64 sequence (the SplittableRandom generator)
/// started at a point derived from both ids. Identical ids give an
/// identical sequence, so concurrent trials that own distinct stream ids
/// are reproducible under any scheduling.
class Rng {
  public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id)
        : state_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_id)))
    {
    }

    std::uint64_t next_u64()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are generated together and
    /// the second value is served on the next call.
    double normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps the log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Additive receiver noise; sigma2_w is the total complex variance per
/// antenna (sigma2_w/2 per quadrature).
struct NoiseModel {
    double sigma2_w = 0.0;
};

/// Nonnegative scalar a detector thresholds or compares on.
struct DetectorStat {
    double value = 0.0;
};

/// Two independent complex Gaussian samples with per-antenna variance
/// noise.sigma2_w.
Jones2 awgn(Rng &rng, const NoiseModel &noise);

/// y = sqrt(p_t) h + w
Jones2 receive(const Jones2 &h, double p_t, const Jones2 &w);

/// Mismatch correction at the receiver: x_hat = A(beta_hat)^T y.
Jones2 equalize(const Jones2 &y, MismatchAngle beta_hat);

/// 1 when the vertical component carries at least as much magnitude as
/// the horizontal one (ties decide 1).
Bit detect_max_power(const Jones2 &s);

/// Estimated mismatch angle: the true angle plus a zero-mean Gaussian
/// error of standard deviation sigma_e.
MismatchAngle perturb_beta(MismatchAngle beta, double sigma_e, Rng &rng);

/// |h_o^H y| / ||h_o|| with the on-state template
/// h_o = A(beta_hat) [1 + e^{j dphi}, 1 - e^{j dphi}]^T (||h_o|| = 2).
DetectorStat ask_matched_statistic(const Jones2 &y, double delta_phi, MismatchAngle beta_hat);

/// ||y||, for receivers without mismatch knowledge.
DetectorStat ask_noncoherent_statistic(const Jones2 &y);

/// Hard decision against the midpoint threshold M eta sqrt(p_t) / 2
/// (at-threshold decides 1).
Bit ask_decide(DetectorStat stat, std::size_t m_count, double eta, double p_t);

} // namespace polsim

#endif
