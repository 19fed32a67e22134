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

#include <doctest.h>

#include <random>

#include "polsim/analysis.hpp"
#include "polsim/linksim.hpp"
#include "polsim/riscontrol.hpp"
#include "polsim/scene.hpp"
#include "test_helpers.hpp"

using namespace polsim;
using namespace polsim::test;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

TEST_SUITE("analysis")
{
    TEST_CASE("scheme-1 SNR scales with the element count squared")
    {
        const Snr a = snr_scheme1(100, 1e-6, 1.0, 1e-9);
        const Snr b = snr_scheme1(200, 1e-6, 1.0, 1e-9);
        CHECK(b.gamma == doctest::Approx(4.0 * a.gamma).epsilon(1e-12));
        CHECK(snr_scheme1(100, 1e-6, 0.0, 1e-9).gamma == doctest::Approx(0.0));
    }

    TEST_CASE("reference scene lands on the frozen SNR value")
    {
        const Scene s = reference_scene(1.0);
        const double eta = path_loss_eta(s, geometry_angles(s));
        const Snr g1 = snr_scheme1(s.ris.m_count, eta, s.rf.tx_power_w, s.rf.noise_power_w);
        CHECK(to_db(g1.gamma) == doctest::Approx(kGamma1RefSceneDb).epsilon(1e-9));
        CHECK(ber_theoretical(g1) == doctest::Approx(9.67275764325962e-5).epsilon(1e-9));
    }

    TEST_CASE("scheme-2 SNR closed form")
    {
        const std::size_t m = 400;
        const double eta = 1e-7, p_t = 1e-2, s2 = 1e-13;
        const double g1 = snr_scheme1(m, eta, p_t, s2).gamma;

        CHECK(snr_scheme2(m, eta, p_t, s2, {0.0}).gamma == doctest::Approx(g1));
        const double g45 = snr_scheme2(m, eta, p_t, s2, {45.0 * kDeg}).gamma;
        CHECK(g45 == doctest::Approx(0.5 * g1).epsilon(1e-12));
        CHECK(to_db(g45) - to_db(g1) == doctest::Approx(-3.0102999566).epsilon(1e-6));

        // periodicity and symmetry of the closed form
        std::mt19937 gen(31);
        std::uniform_real_distribution<double> ang(-10.0, 10.0);
        for (int i = 0; i < 200; ++i) {
            const double beta = ang(gen);
            const double g = snr_scheme2(m, eta, p_t, s2, {beta}).gamma;
            CHECK(snr_scheme2(m, eta, p_t, s2, {beta + std::numbers::pi / 2}).gamma ==
                  doctest::Approx(g).epsilon(1e-12));
            CHECK(snr_scheme2(m, eta, p_t, s2, {-beta}).gamma ==
                  doctest::Approx(g).epsilon(1e-12));
            CHECK(g <= g1 * (1.0 + 1e-12));
        }
    }

    TEST_CASE("theoretical BER values and monotonicity")
    {
        CHECK(ber_theoretical({0.0}) == doctest::Approx(0.5));
        CHECK(ber_theoretical({2.0 * std::log(50.0)}) == doctest::Approx(0.01).epsilon(1e-12));

        std::mt19937 gen(37);
        std::uniform_real_distribution<double> g(0.0, 30.0);
        for (int i = 0; i < 200; ++i) {
            const double a = g(gen), b = g(gen);
            if (a == b)
                continue;
            const double lo = std::min(a, b), hi = std::max(a, b);
            CHECK(ber_theoretical({lo}) > ber_theoretical({hi}));
        }
    }

    TEST_CASE("decibel conversions")
    {
        CHECK(to_db(1.0) == doctest::Approx(0.0));
        CHECK(to_db(2.0) == doctest::Approx(3.0102999566398120).epsilon(1e-12));
        CHECK(from_db(to_db(0.034)) == doctest::Approx(0.034).epsilon(1e-12));
        CHECK_THROWS_AS(to_db(0.0), std::domain_error);
        CHECK_THROWS_AS(to_db(-2.0), std::domain_error);
    }

    TEST_CASE("noiseless pipeline power reproduces gamma1 exactly")
    {
        const Scene s = reference_scene(0.5);
        const LinkBudget budget = link_budget(s);
        const double g1 =
            snr_scheme1(budget.m_count(), budget.eta, s.rf.tx_power_w, s.rf.noise_power_w)
                .gamma;
        for (int deg = 0; deg <= 180; deg += 20) {
            const MismatchAngle beta{deg * kDeg};
            for (const Bit bit : {false, true}) {
                const PhaseProfile p = scheme1_profile(budget.psi, bit);
                const Jones2 x = equalize(
                    receive(compose_channel_fast(p, budget, beta), s.rf.tx_power_w, {}),
                    beta);
                const double target = bit ? std::norm(x.v) : std::norm(x.h);
                CHECK(target / s.rf.noise_power_w == doctest::Approx(g1).epsilon(1e-10));
            }
        }
    }
}
