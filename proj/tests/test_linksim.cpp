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

#include "polsim/linksim.hpp"
#include "polsim/riscontrol.hpp"
#include "polsim/scene.hpp"
#include "test_helpers.hpp"

using namespace polsim;
using namespace polsim::test;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

TEST_SUITE("linksim")
{
    TEST_CASE("streams are reproducible and distinct")
    {
        Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
        bool all_equal_c = true, all_equal_d = true;
        for (int i = 0; i < 64; ++i) {
            const std::uint64_t va = a.next_u64();
            CHECK(va == b.next_u64());
            all_equal_c = all_equal_c && va == c.next_u64();
            all_equal_d = all_equal_d && va == d.next_u64();
        }
        CHECK_FALSE(all_equal_c);
        CHECK_FALSE(all_equal_d);
    }

    TEST_CASE("awgn is silent at zero variance")
    {
        Rng rng(1, 0);
        const Jones2 w = awgn(rng, {0.0});
        CHECK(w.norm() == doctest::Approx(0.0));
    }

    TEST_CASE("awgn first and second moments")
    {
        const double sigma2 = 0.73;
        const int n = 1000000;
        Rng rng(7, 0);
        double sum_vr = 0, sum_vi = 0, sum_hr = 0, sum_hi = 0, sum_p = 0;
        for (int i = 0; i < n; ++i) {
            const Jones2 w = awgn(rng, {sigma2});
            sum_vr += w.v.real();
            sum_vi += w.v.imag();
            sum_hr += w.h.real();
            sum_hi += w.h.imag();
            sum_p += std::norm(w.v);
        }
        const double bound = 5.0 * std::sqrt(sigma2) / std::sqrt(double(n));
        CHECK(std::abs(sum_vr / n) < bound);
        CHECK(std::abs(sum_vi / n) < bound);
        CHECK(std::abs(sum_hr / n) < bound);
        CHECK(std::abs(sum_hi / n) < bound);
        CHECK(sum_p / n == doctest::Approx(sigma2).epsilon(0.01));
    }

    TEST_CASE("receive combines signal and noise")
    {
        const Jones2 h{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
        const Jones2 w{cplx{0.1, -0.2}, cplx{0.3, 0.4}};
        Jones2 y = receive(h, 4.0, {});
        CHECK(std::abs(y.v - cplx{2.0, 0.0}) < 1e-15);
        CHECK(std::abs(y.h) < 1e-15);
        y = receive(h, 0.0, w);
        CHECK(std::abs(y.v - w.v) < 1e-15);
        CHECK(std::abs(y.h - w.h) < 1e-15);
    }

    TEST_CASE("equalization inverts the mismatch rotation")
    {
        const Jones2 y{cplx{0.3, 0.1}, cplx{-0.2, 0.5}};
        const Jones2 same = equalize(y, {0.0});
        CHECK(std::abs(same.v - y.v) < 1e-15);
        CHECK(std::abs(same.h - y.h) < 1e-15);

        // noiseless scheme-1 receive chain at matched estimate
        const std::size_t m = 50;
        const double eta = 0.02, p_t = 2.5;
        std::mt19937 gen(5);
        const LinkBudget budget = random_budget(gen, m, eta);
        const double amp = double(m) * eta * std::sqrt(p_t);
        for (int deg = 0; deg <= 180; deg += 15) {
            const MismatchAngle beta{deg * kDeg};
            const PhaseProfile p = scheme1_profile(budget.psi, true);
            const Jones2 h = compose_channel_fast(p, budget, beta);
            const Jones2 x = equalize(receive(h, p_t, {}), beta);
            CHECK(std::abs(x.v) == doctest::Approx(amp).epsilon(1e-10));
            CHECK(std::abs(x.h) < 1e-10 * amp);

            // a misestimated angle leaks |sin(eps)| into the other branch
            const double eps = 3.0 * kDeg;
            const Jones2 xe = equalize(receive(h, p_t, {}), {beta.rad + eps});
            CHECK(std::abs(xe.h) ==
                  doctest::Approx(amp * std::abs(std::sin(eps))).epsilon(1e-10));
        }
    }

    TEST_CASE("max-power detector and its tie rule")
    {
        CHECK(detect_max_power({cplx{1.0, 0.0}, cplx{0.0, 0.0}}) == true);
        CHECK(detect_max_power({cplx{0.0, 0.0}, cplx{2.0, 0.0}}) == false);
        CHECK(detect_max_power({cplx{1.0, 0.0}, cplx{0.0, 1.0}}) == true); // tie -> 1
    }

    TEST_CASE("detector decision is phase invariant")
    {
        std::mt19937 gen(17);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
        for (int i = 0; i < 10000; ++i) {
            const Jones2 y{cplx{u(gen), u(gen)}, cplx{u(gen), u(gen)}};
            const cplx rot = std::polar(1.0, ang(gen));
            const MismatchAngle bh{u(gen)};
            CHECK(detect_max_power(equalize(y, bh)) ==
                  detect_max_power(equalize(rot * y, bh)));
        }
    }

    TEST_CASE("equalization preserves the noise statistics")
    {
        const double sigma2 = 1.3;
        const int n = 1000000;
        Rng rng(11, 0);
        const MismatchAngle bh{0.61};
        double var_v = 0, var_h = 0;
        for (int i = 0; i < n; ++i) {
            const Jones2 w = equalize(awgn(rng, {sigma2}), bh);
            var_v += std::norm(w.v);
            var_h += std::norm(w.h);
        }
        CHECK(var_v / n == doctest::Approx(sigma2).epsilon(0.02));
        CHECK(var_h / n == doctest::Approx(sigma2).epsilon(0.02));
    }

    TEST_CASE("beta perturbation moments")
    {
        Rng rng(3, 1);
        const MismatchAngle beta{0.4};
        CHECK(perturb_beta(beta, 0.0, rng).rad == doctest::Approx(0.4));

        const double sigma_e = 4.0 * kDeg;
        const int n = 1000000;
        double sum = 0, sum2 = 0;
        for (int i = 0; i < n; ++i) {
            const double d = perturb_beta(beta, sigma_e, rng).rad - beta.rad;
            sum += d;
            sum2 += d * d;
        }
        const double std_hat = std::sqrt(sum2 / n - (sum / n) * (sum / n));
        CHECK(std_hat == doctest::Approx(sigma_e).epsilon(0.01));
    }

    TEST_CASE("matched-filter statistic hits the coherent amplitude")
    {
        const std::size_t m = 64;
        const double eta = 0.015, p_t = 1.7;
        std::mt19937 gen(23);
        const LinkBudget budget = random_budget(gen, m, eta);
        const double amp = double(m) * eta * std::sqrt(p_t);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
        for (int rep = 0; rep < 20; ++rep) {
            const double dphi = ang(gen);
            const MismatchAngle beta{ang(gen)};
            const PhaseProfile p = ask_profile(budget.psi, true, dphi);
            const Jones2 y = receive(compose_channel_fast(p, budget, beta), p_t, {});
            // the template rotation cancels the channel rotation
            CHECK(ask_matched_statistic(y, dphi, beta).value ==
                  doctest::Approx(amp).epsilon(1e-10));
        }
        CHECK(ask_matched_statistic({}, 0.3, {0.2}).value == doctest::Approx(0.0));
    }

    TEST_CASE("non-coherent statistic is the plain norm")
    {
        CHECK(ask_noncoherent_statistic({cplx{3.0, 0.0}, cplx{4.0, 0.0}}).value ==
              doctest::Approx(5.0));
        CHECK(ask_noncoherent_statistic({}).value == doctest::Approx(0.0));

        const std::size_t m = 32;
        const double eta = 0.05, p_t = 0.9;
        std::mt19937 gen(29);
        const LinkBudget budget = random_budget(gen, m, eta);
        const PhaseProfile p = ask_profile(budget.psi, true, 1.1);
        for (int deg = 0; deg <= 180; deg += 30) {
            const Jones2 y =
                receive(compose_channel_fast(p, budget, {deg * kDeg}), p_t, {});
            CHECK(ask_noncoherent_statistic(y).value ==
                  doctest::Approx(double(m) * eta * std::sqrt(p_t)).epsilon(1e-10));
        }
    }

    TEST_CASE("hard decision threshold sits at half the on amplitude")
    {
        const std::size_t m = 100;
        const double eta = 0.01, p_t = 4.0;
        const double amp = double(m) * eta * std::sqrt(p_t);
        CHECK(ask_decide({amp}, m, eta, p_t) == true);
        CHECK(ask_decide({0.0}, m, eta, p_t) == false);
        CHECK(ask_decide({0.5 * amp}, m, eta, p_t) == true); // at threshold -> 1
        CHECK(ask_decide({0.4999 * amp}, m, eta, p_t) == false);
    }

    TEST_CASE("noiseless end-to-end chains decide the sent bit")
    {
        const std::size_t m = 400;
        const double eta = 3.2e-4, p_t = 0.8;
        const LinkBudget budget = flat_budget(m, eta);
        for (int deg = 0; deg <= 180; ++deg) {
            const MismatchAngle beta{deg * kDeg};
            for (const Bit bit : {false, true}) {
                // scheme 1: equalize with the true angle, then detect
                const Jones2 y1 = receive(
                    compose_channel_fast(scheme1_profile(budget.psi, bit), budget, beta),
                    p_t, {});
                CHECK(detect_max_power(equalize(y1, beta)) == bit);

                // scheme 2: detect directly on the received signal
                const Jones2 y2 = receive(
                    compose_channel_fast(scheme2_profile(budget.psi, beta, bit), budget,
                                         beta),
                    p_t, {});
                CHECK(detect_max_power(y2) == bit);
            }
        }
    }
}
