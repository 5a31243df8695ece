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

#include "ldma/metrics.hpp"
#include "ldma/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ldma;

namespace
{
    const double lambda30 = wavelength_from_frequency(30e9);

    ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, SeededStream &rng)
    {
        ComplexMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m.data()[i] = rng.complex_normal();
        return m;
    }

    // N x K analog matrix of K distinct DFT columns
    ComplexMatrix dft_columns(const ArrayGeometry &g, const std::vector<int> &bins)
    {
        ComplexMatrix F(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(bins.size()));
        for (std::size_t i = 0; i < bins.size(); ++i)
            F.col(Eigen::Index(i)) = ula_steering(g, std::asin((2.0 * bins[i] - double(g.n1) + 1.0) / double(g.n1)));
        return F;
    }

    // Unit-modulus analog matrix with random phases
    ComplexMatrix random_analog(Eigen::Index N, Eigen::Index K, SeededStream &rng)
    {
        ComplexMatrix F(N, K);
        for (Eigen::Index i = 0; i < F.size(); ++i)
            F.data()[i] = std::polar(1.0 / std::sqrt(double(N)), rng.uniform(-M_PI, M_PI));
        return F;
    }

    double sum_rate(const ComplexMatrix &H, const PrecodingSolution &sol, double p, double sigma2)
    {
        return spectrum_efficiency(H, sol, Eigen::VectorXd::Constant(H.cols(), p), sigma2).sum;
    }
} // namespace

TEST_SUITE("precoding")
{
    TEST_CASE("beam sweep picks the matched codeword")
    {
        const auto g = ArrayGeometry::ula(64, lambda30);
        const Codebook cb = build_polar_codebook_ula(g, 0.55, 0.5);
        REQUIRE(cb.ring_count > 1);
        for (std::size_t m : {std::size_t(3), cb.angle_count() + 17, cb.size() - 1})
        {
            ComplexMatrix H(64, 1);
            H.col(0) = 8.0 * cb.vector(m);
            CHECK(beam_sweep_assign(H, cb) == std::vector<std::size_t>{m});
        }
        ComplexMatrix twins(64, 2);
        twins.col(0) = twins.col(1) = 8.0 * cb.vector(5);
        const auto pick = beam_sweep_assign(twins, cb);
        CHECK(pick[0] == 5);
        CHECK(pick[1] != pick[0]);
    }

    TEST_CASE("greedy assignment against exhaustive assignment")
    {
        SeededStream rng(12, 0);
        for (int trial = 0; trial < 10; ++trial)
        {
            Eigen::MatrixXd gains(32, 4);
            for (Eigen::Index i = 0; i < gains.size(); ++i)
                gains.data()[i] = std::abs(rng.complex_normal());
            const auto pick = assign_from_gains(gains);
            REQUIRE(pick.size() == 4);
            std::vector<std::size_t> sorted = pick;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            double greedy = 0.0;
            for (Eigen::Index k = 0; k < 4; ++k)
                greedy += gains(Eigen::Index(pick[std::size_t(k)]), k);

            double best = 0.0;
            for (int a = 0; a < 32; ++a)
                for (int b = 0; b < 32; ++b)
                    for (int c = 0; c < 32; ++c)
                        for (int d = 0; d < 32; ++d)
                        {
                            if (a == b || a == c || a == d || b == c || b == d || c == d)
                                continue;
                            best = std::max(best, gains(a, 0) + gains(b, 1) + gains(c, 2) + gains(d, 3));
                        }
            CHECK(greedy >= 0.95 * best);
        }
    }

    TEST_CASE("effective channel")
    {
        const auto g = ArrayGeometry::ula(32, lambda30);
        const ComplexMatrix FA = dft_columns(g, {2, 9, 20, 27});
        const ComplexMatrix H = std::sqrt(32.0) * FA;
        const ComplexMatrix clean = effective_channel(H, FA, 0.0, nullptr);
        CHECK((clean - std::sqrt(32.0) * ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

        SeededStream a(3, 2), b(3, 2);
        CHECK(effective_channel(H, FA, 0.1, &a) == effective_channel(H, FA, 0.1, &b));

        SeededStream s(4, 2);
        double energy = 0.0;
        for (int i = 0; i < 500; ++i)
            energy += (effective_channel(H, FA, 0.05, &s) - clean).squaredNorm();
        CHECK(energy / 500.0 == doctest::Approx(4 * 4 * 0.05).epsilon(0.05));
        CHECK_THROWS(effective_channel(H, FA, 0.1, nullptr));
    }

    TEST_CASE("zero forcing")
    {
        const auto g = ArrayGeometry::ula(32, lambda30);
        const ComplexMatrix FA = dft_columns(g, {1, 8, 15});
        const PrecodingSolution id = zf_digital(ComplexMatrix::Identity(3, 3), FA);
        CHECK((id.digital - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

        SeededStream rng(5, 0);
        for (int trial = 0; trial < 20; ++trial)
        {
            const ComplexMatrix A = random_analog(64, 5, rng);
            const ComplexMatrix H = random_matrix(64, 5, rng);
            const ComplexMatrix eff = effective_channel(H, A, 0.0, nullptr);
            const PrecodingSolution sol = zf_digital(eff, A);
            const ComplexMatrix R = H.adjoint() * sol.transmit();
            const double off = (R - ComplexMatrix(R.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
            CHECK(off < 1e-8 * R.diagonal().cwiseAbs().minCoeff());
            for (Eigen::Index k = 0; k < 5; ++k)
                CHECK(sol.transmit().col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
        }

        // single-path users: per-user gain sqrt(N / [(B^H B)^{-1}]_kk) |alpha_k|
        const auto big = ArrayGeometry::ula(128, lambda30);
        ComplexMatrix B(128, 4);
        const double r[4] = {5.0, 9.0, 14.0, 30.0}, phi[4] = {0.1, 0.12, -0.4, 0.3};
        for (int k = 0; k < 4; ++k)
            B.col(k) = ula_focusing(big, {r[k], M_PI / 2, phi[k]});
        const Eigen::Vector4d alpha(0.7, 1.3, 0.2, 1.0);
        ComplexMatrix H = std::sqrt(128.0) * B;
        for (int k = 0; k < 4; ++k)
            H.col(k) *= std::polar(alpha[k], 0.3 * k);
        const PrecodingSolution sol = zf_digital(effective_channel(H, B, 0.0, nullptr), B);
        const Eigen::VectorXd gamma = oracle::inverse_diagonal(B.adjoint() * B);
        for (int k = 0; k < 4; ++k)
        {
            const double gain = std::abs(H.col(k).dot(sol.transmit().col(k)));
            CHECK(gain == doctest::Approx(std::sqrt(128.0 / gamma[k]) * alpha[k]).epsilon(1e-8));
            CHECK(sol.lambda[k] > 0.0);
        }
    }

    TEST_CASE("WMMSE")
    {
        SeededStream rng(6, 0);
        // one user: the rate of the effective scalar channel under the power budget
        {
            const ComplexMatrix A = random_analog(32, 1, rng);
            const ComplexMatrix H = random_matrix(32, 1, rng);
            const ComplexMatrix eff = effective_channel(H, A, 0.0, nullptr);
            const double p = 3.0, s2 = 0.7;
            const PrecodingSolution sol = wmmse_digital(eff, A, p, s2);
            const double q = A.col(0).squaredNorm();
            CHECK(sum_rate(H, sol, p, s2) == doctest::Approx(std::log2(1.0 + p * std::norm(eff(0, 0)) / (q * s2))).epsilon(1e-9));
        }
        int checked = 0;
        for (int trial = 0; trial < 50; ++trial)
        {
            const Eigen::Index K = 2 + trial % 5;
            const ComplexMatrix A = random_analog(48, K, rng);
            const ComplexMatrix H = random_matrix(48, K, rng);
            const ComplexMatrix eff = effective_channel(H, A, 0.0, nullptr);
            const double p = std::pow(10.0, rng.uniform(-1.0, 2.0));
            std::vector<double> trace;
            const PrecodingSolution sol = wmmse_digital(eff, A, p, 1.0, {200, 1e-9}, &trace);
            REQUIRE(!trace.empty());
            for (std::size_t i = 1; i < trace.size(); ++i)
                CHECK(trace[i] >= trace[i - 1] - 1e-9 * std::abs(trace[i - 1]));
            CHECK(sol.power_scale.sum() <= double(K) * (1.0 + 1e-9));
            // users switched off carry a zero column
            for (Eigen::Index k = 0; k < K; ++k)
                CHECK(sol.transmit().col(k).norm() == doctest::Approx(sol.power_scale[k] > 0.0 ? 1.0 : 0.0).epsilon(1e-12));
            ++checked;
        }
        CHECK(checked == 50);

        // small noise on a well-conditioned channel: no worse than ZF
        for (int trial = 0; trial < 10; ++trial)
        {
            const ComplexMatrix A = random_analog(64, 4, rng);
            const ComplexMatrix H = random_matrix(64, 4, rng);
            const ComplexMatrix eff = effective_channel(H, A, 0.0, nullptr);
            const double s2 = 1e-6;
            const double zf = sum_rate(H, zf_digital(eff, A), 1.0, s2);
            CHECK(sum_rate(H, wmmse_digital(eff, A, 1.0, s2), 1.0, s2) >= zf - 1e-6);
        }
        CHECK_THROWS_AS(wmmse_digital(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 1.0, 1.0, {0, 1e-6}),
                        std::invalid_argument);
    }

    TEST_CASE("fully digital zero forcing")
    {
        SeededStream rng(7, 0);
        const ComplexMatrix h = random_matrix(16, 1, rng);
        const PrecodingSolution one = fully_digital_zf(h);
        CHECK(std::abs(std::abs(one.transmit().col(0).dot(h.col(0))) - h.norm()) < 1e-12);

        const ComplexMatrix H = random_matrix(64, 6, rng);
        const PrecodingSolution sol = fully_digital_zf(H);
        const ComplexMatrix R = H.adjoint() * sol.transmit();
        for (Eigen::Index k = 0; k < 6; ++k)
            for (Eigen::Index l = 0; l < 6; ++l)
                if (k != l)
                    CHECK(std::abs(R(k, l)) <= 1e-8);
        CHECK_THROWS(fully_digital_zf(random_matrix(4, 6, rng)));
    }
}
