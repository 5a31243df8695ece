// SPDX-License-Identifier: Apache-2.0
//
// ldma: near-field multi-user beam focusing and location division multiple access
// Copyright (C) 2026 The ldma authors
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

#include "doctest.h"
#include "oracles.hpp"

#include "ldma/correlation.hpp"

#include <cmath>

using namespace ldma;

namespace
{
    const double lambda30 = wavelength_from_frequency(30e9);
    const std::vector<std::size_t> n_sweep{64, 128, 256, 512, 1024, 2048, 4096};
} // namespace

TEST_SUITE("correlation")
{
    TEST_CASE("exact correlation")
    {
        const auto g = ArrayGeometry::ula(32, lambda30);
        const ComplexVector v = ula_focusing(g, {7.0, M_PI / 2, 0.2});
        CHECK(exact_correlation(v, v) == doctest::Approx(1.0).epsilon(1e-14));
        // orthogonal DFT columns
        const ComplexVector a = ula_steering(g, std::asin(1.0 / 32.0)), b = ula_steering(g, std::asin(3.0 / 32.0));
        CHECK(exact_correlation(a, b) < 1e-12);
        const double kd = g.wavenumber() * g.spacing;
        const ComplexVector c = ula_steering(g, 0.1), d = ula_steering(g, 0.17);
        CHECK(std::abs(exact_correlation(c, d) - std::abs(oracle::dirichlet_sum(32, kd * (std::sin(0.17) - std::sin(0.1))))) <
              1e-10);
    }

    TEST_CASE("Fresnel approximation of the ULA distance correlation")
    {
        const auto g = ArrayGeometry::ula(512, lambda30);
        CHECK(fresnel_correlation_ula(g, 8.0, 8.0, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
        const double exact = exact_correlation(ula_focusing(g, {5.0, M_PI / 2, M_PI / 6}),
                                               ula_focusing(g, {15.0, M_PI / 2, M_PI / 6}));
        CHECK(std::abs(fresnel_correlation_ula(g, 5.0, 15.0, M_PI / 6) - exact) <= 0.05);
        CHECK(fresnel_correlation_ula(ArrayGeometry::ula(16384, lambda30), 5.0, 15.0, M_PI / 6) < 0.05);
        // random pairs at a shared angle
        SeededStream rng(6, 0);
        for (int i = 0; i < 20; ++i)
        {
            const double r1 = rng.uniform(4.0, 60.0), r2 = rng.uniform(4.0, 60.0), phi = rng.uniform(-1.0, 1.0);
            const double ex =
                exact_correlation(ula_focusing(g, {r1, M_PI / 2, phi}), ula_focusing(g, {r2, M_PI / 2, phi}));
            CHECK(std::abs(fresnel_correlation_ula(g, r1, r2, phi) - ex) < 0.02);
        }
    }

    TEST_CASE("correlation trend over array size")
    {
        const auto g = ArrayGeometry::ula(64, lambda30);
        const Location a{5.0, M_PI / 2, M_PI / 6}, b{15.0, M_PI / 2, M_PI / 6};
        for (const double v : correlation_2d_trend(g, a, a, n_sweep))
            CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        const auto t = correlation_2d_trend(g, a, b, n_sweep);
        CHECK(t.size() == n_sweep.size());
        CHECK(t.back() < 0.25);
        CHECK(t.back() < t.front());
        const auto angular = correlation_2d_trend(g, {10.0, M_PI / 2, 0.0}, {10.0, M_PI / 2, M_PI / 7}, {2048});
        CHECK(angular[0] < 0.1);
    }

    TEST_CASE("UPA distance orthogonality trend")
    {
        const auto g = ArrayGeometry::upa(64, 16, lambda30);
        for (const double v : upa_distance_orthogonality_trend(g, {64, 256}, 9.0, 9.0, M_PI / 3, M_PI / 6))
            CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        const auto t = upa_distance_orthogonality_trend(g, {64, 128, 256, 512}, 5.0, 15.0, M_PI / 3, M_PI / 6);
        CHECK(t.back() < t.front());
        CHECK(t.back() < 0.3);
        const auto swapped = upa_distance_orthogonality_trend(g, {64, 128, 256, 512}, 15.0, 5.0, M_PI / 3, M_PI / 6);
        for (std::size_t i = 0; i < t.size(); ++i)
            CHECK(swapped[i] == doctest::Approx(t[i]).epsilon(1e-12));
    }

    TEST_CASE("bilinear gain loss")
    {
        const auto g = ArrayGeometry::upa(64, 64, lambda30);
        CHECK(bilinear_gain_loss(g, {5.0, M_PI / 3, 0.0}) == doctest::Approx(1.0));
        CHECK(bilinear_min_distance(ArrayGeometry::upa(256, 16, lambda30), std::sqrt(3.0) / 4.0, 0.95) ==
              doctest::Approx(7.24).epsilon(0.15 / 7.24));
        const double eta = bilinear_eta_for_gain(0.95);
        CHECK(oracle::sine_integral(eta, 100000) / eta == doctest::Approx(0.95).epsilon(1e-9));

        SeededStream rng(8, 0);
        for (int i = 0; i < 15; ++i)
        {
            const Location loc{rng.uniform(1.5, 20.0), rng.uniform(0.4, 2.7), rng.uniform(-1.2, 1.2)};
            const double ex = exact_correlation(upa_focusing(g, loc, false), upa_focusing(g, loc, true));
            CAPTURE(loc.r);
            CHECK(std::abs(bilinear_gain_loss(g, loc) - ex) < 0.02);
        }
    }

    TEST_CASE("two-factor Fresnel correlation for UPA")
    {
        const auto g = ArrayGeometry::upa(64, 64, lambda30);
        CHECK(std::abs(gbar(g, 0.0, M_PI / 3, M_PI / 6)) == doctest::Approx(1.0));
        CHECK(upa_distance_correlation_approx(g, 6.0, 6.0, M_PI / 3, M_PI / 6) == doctest::Approx(1.0));
        CHECK(beta0_from_radii(g, 3.0, 7.0) == doctest::Approx(beta0_from_radii(g, 7.0, 3.0)));

        // G(x) = (C(x) + j S(x)) / x from quadrature, one factor per array axis
        auto G = [](double x) { return oracle::cd(oracle::fresnel_c(x, 200000), oracle::fresnel_s(x, 200000)) / x; };
        for (const double b0 : {0.004, 0.02, 0.05})
        {
            const double b1 = 64 * b0 * std::sin(M_PI / 3);
            const double b2 = 64 * b0 * std::sqrt(1 - std::pow(std::sin(M_PI / 3) * std::sin(M_PI / 6), 2));
            CHECK(std::abs(gbar(g, b0, M_PI / 3, M_PI / 6) - G(b1) * G(b2)) < 1e-8);
        }

        // peak magnitude over successive windows of beta_0 decays
        double prev_peak = 1.0 + 1e-12;
        for (int w = 0; w < 8; ++w)
        {
            double peak = 0.0;
            for (int j = 0; j <= 50; ++j)
                peak = std::max(peak, std::abs(gbar(g, 0.02 * w + 0.0004 * j, M_PI / 3, M_PI / 6)));
            CHECK(peak <= prev_peak);
            prev_peak = peak;
        }
        CHECK(prev_peak < 0.3);

        SeededStream rng(10, 0);
        for (int i = 0; i < 15; ++i)
        {
            const double t = rng.uniform(0.5, 2.6), p = rng.uniform(-1.0, 1.0);
            const double r1 = rng.uniform(1.0, 20.0), r2 = rng.uniform(1.0, 20.0);
            const double ex = exact_correlation(upa_focusing(g, {r1, t, p}, true), upa_focusing(g, {r2, t, p}, true));
            CHECK(std::abs(upa_distance_correlation_approx(g, r1, r2, t, p) - ex) < 0.05);
        }
    }
}
