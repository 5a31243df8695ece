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

#include "ldma/array.hpp"
#include "ldma/correlation.hpp"

#include <cmath>
#include <numeric>

using namespace ldma;

namespace
{
    const double lambda30 = wavelength_from_frequency(30e9);

    double max_abs_diff(const ComplexVector &a, const ComplexVector &b) { return (a - b).cwiseAbs().maxCoeff(); }

    // Kronecker product of two vectors
    ComplexVector kron(const ComplexVector &a, const ComplexVector &b)
    {
        ComplexVector out(a.size() * b.size());
        for (Eigen::Index i = 0; i < a.size(); ++i)
            out.segment(i * b.size(), b.size()) = a[i] * b;
        return out;
    }
} // namespace

TEST_SUITE("array")
{
    TEST_CASE("symmetric indices")
    {
        CHECK(symmetric_indices(3) == std::vector<double>{-1.0, 0.0, 1.0});
        CHECK(symmetric_indices(4) == std::vector<double>{-1.5, -0.5, 0.5, 1.5});
        for (std::size_t n : {1u, 7u, 64u, 511u})
        {
            const auto idx = symmetric_indices(n);
            CHECK(std::accumulate(idx.begin(), idx.end(), 0.0) == doctest::Approx(0.0));
        }
    }

    TEST_CASE("geometry validation")
    {
        CHECK_THROWS_AS(ArrayGeometry::ula(0, lambda30), std::invalid_argument);
        CHECK_THROWS_AS(ArrayGeometry::ula(8, -1.0), std::invalid_argument);
        ArrayGeometry g = ArrayGeometry::ula(8, lambda30);
        g.n2 = 2;
        CHECK_THROWS_AS(g.validate(), std::invalid_argument);
        CHECK(ArrayGeometry::ula(8, lambda30).spacing == doctest::Approx(lambda30 / 2));
        CHECK_THROWS_AS(ula_steering(ArrayGeometry::upa(4, 4, lambda30), 0.0), std::invalid_argument);
    }

    TEST_CASE("ULA steering")
    {
        const auto g = ArrayGeometry::ula(64, lambda30);
        const ComplexVector a0 = ula_steering(g, 0.0);
        CHECK((a0.array() - 1.0 / 8.0).abs().maxCoeff() < 1e-15);
        SeededStream rng(1, 0);
        for (int i = 0; i < 20; ++i)
        {
            const double p1 = rng.uniform(-1.2, 1.2), p2 = rng.uniform(-1.2, 1.2);
            const ComplexVector a1 = ula_steering(g, p1), a2 = ula_steering(g, p2);
            CHECK(std::abs(a1.norm() - 1.0) < 1e-12);
            CHECK(max_abs_diff(a1, oracle::ula_plane(64, g.spacing, g.wavelength, p1)) < 1e-12);
            const double kd = g.wavenumber() * g.spacing;
            CHECK(std::abs(std::abs(a1.dot(a2)) - std::abs(dirichlet_sinc(64, kd * (std::sin(p2) - std::sin(p1))))) <
                  1e-10);
        }
    }

    TEST_CASE("UPA steering")
    {
        const auto g = ArrayGeometry::upa(8, 4, lambda30);
        CHECK((upa_steering(g, M_PI / 2, 0.0).array() - 1.0 / std::sqrt(32.0)).abs().maxCoeff() < 1e-15);
        const double kd = g.wavenumber() * g.spacing;
        SeededStream rng(2, 0);
        for (int i = 0; i < 20; ++i)
        {
            const double t1 = rng.uniform(0.3, 2.8), p1 = rng.uniform(-1.0, 1.0);
            const double t2 = rng.uniform(0.3, 2.8), p2 = rng.uniform(-1.0, 1.0);
            // element (i1, i2) at index i1 * n2 + i2: z factor outer, y factor inner
            ComplexVector az(8), ay(4);
            for (int m = 0; m < 8; ++m)
                az[m] = std::polar(1.0 / std::sqrt(8.0), kd * (m - 3.5) * std::cos(t1));
            for (int m = 0; m < 4; ++m)
                ay[m] = std::polar(0.5, kd * (m - 1.5) * std::sin(t1) * std::sin(p1));
            const ComplexVector v1 = upa_steering(g, t1, p1);
            CHECK(max_abs_diff(v1, kron(az, ay)) < 1e-12);

            const ComplexVector v2 = upa_steering(g, t2, p2);
            const double expect = std::abs(dirichlet_sinc(8, kd * (std::cos(t2) - std::cos(t1))) *
                                           dirichlet_sinc(4, kd * (std::sin(t2) * std::sin(p2) -
                                                                   std::sin(t1) * std::sin(p1))));
            CHECK(std::abs(exact_correlation(v1, v2) - expect) < 1e-10);
        }
    }

    TEST_CASE("ULA focusing")
    {
        const auto g = ArrayGeometry::ula(512, lambda30);
        for (const double phi : {-0.9, 0.0, 0.4})
        {
            const ComplexVector f = ula_focusing(g, {1e9, M_PI / 2, phi});
            CHECK(max_abs_diff(f, ula_steering(g, phi)) < 1e-6);
            CHECK(std::abs(f.norm() - 1.0) < 1e-12);
        }
        auto fit = [&](double r, double phi)
        {
            return exact_correlation(ula_focusing(g, {r, M_PI / 2, phi}),
                                     oracle::ula_exact(512, g.spacing, g.wavelength, r, phi));
        };
        CHECK(fit(10.0, 0.0) >= 0.99);
        CHECK(fit(50.0, M_PI / 6) >= 0.99);
        // off broadside the dropped cubic term costs a lot at 10 m
        CHECK(fit(10.0, M_PI / 6) == doctest::Approx(0.6706).epsilon(1e-3));
        const Location loc{10.0, M_PI / 2, M_PI / 6};
        const ComplexVector exact = oracle::ula_exact(512, g.spacing, g.wavelength, loc.r, loc.phi);
        CHECK(exact_correlation(ula_focusing_exact(g, loc), exact) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_THROWS_AS(ula_focusing(g, {0.0, M_PI / 2, 0.0}), std::invalid_argument);
    }

    TEST_CASE("UPA focusing")
    {
        const auto g = ArrayGeometry::upa(32, 8, lambda30);
        SeededStream rng(4, 0);
        for (int i = 0; i < 10; ++i)
        {
            const double t = rng.uniform(0.5, 2.6), p = rng.uniform(-1.0, 1.0);
            CHECK(max_abs_diff(upa_focusing(g, {1e9, t, p}), upa_steering(g, t, p)) < 1e-6);
            const ComplexVector f = upa_focusing(g, {rng.uniform(2.0, 30.0), t, p});
            CHECK(std::abs(f.norm() - 1.0) < 1e-12);
        }

        // exact spherical wavefront from element positions on the yz plane
        const Location loc{6.0, M_PI / 3, M_PI / 5};
        const double x = loc.r * std::sin(loc.theta) * std::cos(loc.phi);
        const double y = loc.r * std::sin(loc.theta) * std::sin(loc.phi);
        const double z = loc.r * std::cos(loc.theta);
        ComplexVector ref(g.size());
        for (std::size_t a = 0; a < 32; ++a)
            for (std::size_t b = 0; b < 8; ++b)
            {
                const double ez = (double(a) - 15.5) * g.spacing, ey = (double(b) - 3.5) * g.spacing;
                const double dist = std::sqrt(x * x + (y - ey) * (y - ey) + (z - ez) * (z - ez));
                ref[Eigen::Index(a * 8 + b)] = std::polar(1.0 / 16.0, -g.wavenumber() * (dist - loc.r));
            }
        CHECK(exact_correlation(upa_focusing_exact(g, loc), ref) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(exact_correlation(upa_focusing(g, loc), ref) > 0.99);

        const auto big = ArrayGeometry::upa(256, 16, lambda30);
        const Location l2{10.0, M_PI / 3, M_PI / 6};
        CHECK(exact_correlation(upa_focusing(big, l2, true), upa_focusing(big, l2, false)) >= 0.95);
    }

    TEST_CASE("Rayleigh distance and Fresnel boundary")
    {
        CHECK(rayleigh_distance(ArrayGeometry::ula(32, lambda30)) == doctest::Approx(4.80).epsilon(0.003));
        CHECK(rayleigh_distance(ArrayGeometry::ula(1, lambda30)) == 0.0);
        CHECK(rayleigh_distance(ArrayGeometry::ula(512, 0.01)) == doctest::Approx(1305.6).epsilon(1e-4));
        const auto three = ArrayGeometry::ula(3, 0.01); // aperture equals the wavelength
        CHECK(fresnel_boundary(three) == doctest::Approx(0.005).epsilon(1e-12));
        // 0.5 * 2.555 * cbrt(255.5)
        CHECK(fresnel_boundary(ArrayGeometry::ula(512, 0.01)) == doctest::Approx(8.1066).epsilon(1e-4));
        double prev = 0.0;
        for (std::size_t n = 2; n < 600; n += 37)
        {
            const double fb = fresnel_boundary(ArrayGeometry::ula(n, 0.01));
            CHECK(fb > prev);
            prev = fb;
        }
    }

    TEST_CASE("channel generation")
    {
        const auto g = ArrayGeometry::ula(128, lambda30);
        const Location user{12.0, M_PI / 2, 0.3};
        ScatterRegion region;
        SeededStream s0(1, 1);
        const auto los = generate_channel(g, user, 0, 1e9, region, s0, ChannelModel::near_field);
        CHECK(max_abs_diff(los.h, std::sqrt(128.0) * ula_focusing(g, user)) < 1e-4);
        SeededStream s1(1, 1);
        const auto far = generate_channel(g, user, 0, INFINITY, region, s1, ChannelModel::far_field);
        CHECK(max_abs_diff(far.h, std::sqrt(128.0) * ula_steering(g, user.phi)) < 1e-12);

        double energy = 0.0;
        SeededStream s2(2, 1);
        for (int i = 0; i < 1000; ++i)
            energy += generate_channel(g, user, 5, 8.0, region, s2, ChannelModel::near_field).h.squaredNorm();
        CHECK(energy / 1000.0 == doctest::Approx(128.0).epsilon(0.05));

        SeededStream a(9, 3), b(9, 3);
        const auto ca = generate_channel(g, user, 5, 8.0, region, a, ChannelModel::near_field);
        const auto cb = generate_channel(g, user, 5, 8.0, region, b, ChannelModel::near_field);
        CHECK(ca.h == cb.h);
        CHECK(ca.paths.size() == 6);
        CHECK(max_abs_diff(reconstruct_channel(g, ca.paths, ca.model), ca.h) < 1e-14);

        SeededStream c(1, 1);
        CHECK_THROWS_AS(generate_channel(g, user, 5, -1.0, region, c, ChannelModel::near_field), std::invalid_argument);
        CHECK_THROWS_AS(generate_channel(g, user, 0, 0.0, region, c, ChannelModel::near_field), std::invalid_argument);
    }
}
