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

#include "ldma/metrics.hpp"
#include "ldma/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace ldma
{
    namespace
    {
        double zf_rate_from_gram(const ComplexMatrix &gram, const Eigen::VectorXd &snr)
        {
            const ComplexMatrix inv = hermitian_inverse(gram);
            double rate = 0.0;
            for (Eigen::Index k = 0; k < gram.rows(); ++k)
            {
                const double d = inv(k, k).real();
                if (!(d > 0.0))
                    throw numeric_error("Gram matrix inverse has a non-positive diagonal entry.");
                rate += std::log2(1.0 + snr[k] / d);
            }
            return rate;
        }
    } // namespace

    RateReport spectrum_efficiency(const ComplexMatrix &H, const PrecodingSolution &sol, const Eigen::VectorXd &powers,
                                   double noise_variance)
    {
        const ComplexMatrix T = sol.transmit();
        if (T.rows() != H.rows() || T.cols() != H.cols() || powers.size() != H.cols())
            throw std::invalid_argument("spectrum_efficiency: dimension mismatch.");
        if (!(noise_variance > 0.0))
            throw std::invalid_argument("spectrum_efficiency: noise variance must be positive.");

        Eigen::VectorXd p = powers;
        if (sol.power_scale.size() == p.size())
            p = p.cwiseProduct(sol.power_scale);
        const Eigen::MatrixXd gain = (H.adjoint() * T).cwiseAbs2(); // (k, l): |h_k^H t_l|^2

        RateReport out;
        out.per_user.resize(std::size_t(H.cols()));
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            double interference = 0.0;
            for (Eigen::Index l = 0; l < H.cols(); ++l)
                if (l != k)
                    interference += p[l] * gain(k, l);
            const double r = std::log2(1.0 + p[k] * gain(k, k) / (noise_variance + interference));
            out.per_user[std::size_t(k)] = r;
            out.sum += r;
        }
        return out;
    }

    double per_user_snr(double total_power, std::size_t N, double alpha_abs, std::size_t K, double noise_variance)
    {
        if (K == 0 || !(noise_variance > 0.0))
            throw std::invalid_argument("per_user_snr: need K >= 1 and positive noise variance.");
        return total_power * double(N) * alpha_abs * alpha_abs / (double(K) * noise_variance);
    }

    double ideal_capacity(std::size_t K, std::size_t N, const Eigen::VectorXd &alpha_abs, double total_power,
                          double noise_variance)
    {
        if (std::size_t(alpha_abs.size()) != K)
            throw std::invalid_argument("ideal_capacity: need one gain per user.");
        double rate = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            rate += std::log2(1.0 + per_user_snr(total_power, N, alpha_abs[Eigen::Index(k)], K, noise_variance));
        return rate;
    }

    double zf_rate_closed_form(const ComplexMatrix &B, const Eigen::VectorXd &alpha_abs, double total_power,
                               double noise_variance)
    {
        const auto K = std::size_t(B.cols());
        if (std::size_t(alpha_abs.size()) != K)
            throw std::invalid_argument("zf_rate_closed_form: need one gain per user.");
        Eigen::VectorXd snr(alpha_abs.size());
        for (Eigen::Index k = 0; k < snr.size(); ++k)
            snr[k] = per_user_snr(total_power, std::size_t(B.rows()), alpha_abs[k], K, noise_variance);
        return zf_rate_from_gram(B.adjoint() * B, snr);
    }

    double three_user_rate(double g1, double g2, double tau)
    {
        const double G1 = g1 * g1, G2 = g2 * g2;
        const double D = 1.0 - G1 - G2;
        if (!(D > 0.0))
            throw numeric_error("three_user_rate: correlation matrix is not positive definite.");
        return std::log2(1.0 + tau * D / (1.0 - G2)) + std::log2(1.0 + tau * D) + std::log2(1.0 + tau * D / (1.0 - G1));
    }

    ThreeUserBound three_user_rate_bound(const std::function<double(double)> &g, double r0, double tau)
    {
        if (!(r0 > 0.0) || !std::isfinite(r0))
            throw std::invalid_argument("three_user_rate_bound: r0 must be positive.");

        // Decreasing envelope from dense samples: env(x) = max(g(x), max_{x_i >= x} g(x_i))
        constexpr std::size_t samples = 4000;
        std::vector<double> tail(samples + 1);
        tail[samples] = g(r0);
        for (std::size_t i = samples; i-- > 0;)
            tail[i] = std::max(g(r0 * double(i) / double(samples)), tail[i + 1]);
        auto env = [&](double x)
        {
            const auto i = std::min(samples, std::size_t(std::ceil(x / r0 * double(samples))));
            return std::max(g(x), tail[i]);
        };
        auto h = [&](double x) { return env(x) - env(r0 - x); };

        if (h(0.0) < 0.0 || h(r0) > 0.0)
            throw numeric_error("three_user_rate_bound: no sign change over [0, r0].");
        double lo = 0.0, hi = r0, x = 0.5 * r0;
        for (int it = 0; it < 200; ++it)
        {
            x = 0.5 * (lo + hi);
            const double v = h(x);
            if (v == 0.0 || hi - lo < 1e-15 * r0)
                break;
            (v > 0.0 ? lo : hi) = x;
        }
        ThreeUserBound out;
        out.x_hat = x;
        out.g_hat = g(x);
        const double G = out.g_hat * out.g_hat;
        out.rate = 2.0 * std::log2(1.0 + tau * (1.0 - 2.0 * G) / (1.0 - G)) + std::log2(1.0 + tau * (1.0 - 2.0 * G));
        return out;
    }

    std::vector<double> tridiagonal_gamma(std::size_t K, double delta_abs)
    {
        if (K == 0)
            throw std::invalid_argument("tridiagonal_gamma: K must be positive.");
        const double d2 = delta_abs * delta_abs;
        if (!(d2 <= 0.5) || delta_abs < 0.0)
            throw std::invalid_argument("tridiagonal_gamma: |delta|^2 must lie in [0, 1/2].");
        // theta[i + 1] holds theta_i, i = -1..K
        std::vector<double> theta(K + 2);
        theta[0] = 0.0;
        theta[1] = 1.0;
        for (std::size_t i = 2; i < K + 2; ++i)
            theta[i] = theta[i - 1] - d2 * theta[i - 2];
        if (std::abs(theta[K + 1]) < 1e-300)
            throw numeric_error("tridiagonal_gamma: matrix is singular for this |delta|.");
        std::vector<double> gamma(K);
        for (std::size_t k = 1; k <= K; ++k)
            gamma[k - 1] = theta[k] * theta[K - k + 1] / theta[K + 1];
        return gamma;
    }

    std::vector<double> tridiagonal_gamma_closed_form(std::size_t K, double delta_abs)
    {
        if (K == 0)
            throw std::invalid_argument("tridiagonal_gamma_closed_form: K must be positive.");
        const double d2 = delta_abs * delta_abs;
        if (!(d2 <= 0.5) || delta_abs < 0.0)
            throw std::invalid_argument("tridiagonal_gamma_closed_form: |delta|^2 must lie in [0, 1/2].");
        const double disc = 1.0 - 4.0 * d2;
        if (std::abs(disc) < 1e-6)
            return tridiagonal_gamma(K, delta_abs); // repeated root
        if (d2 == 0.0)
            return std::vector<double>(K, 1.0);

        const cd sq = std::sqrt(cd(disc, 0.0));
        const cd x1 = 0.5 * (1.0 - sq), x2 = 0.5 * (1.0 + sq);
        const cd chi1 = -x1 * x1 / (x2 - x1), chi2 = x2 * x2 / (x2 - x1);
        auto theta = [&](int i) { return (chi1 * std::pow(x1, i - 1) + chi2 * std::pow(x2, i - 1)).real(); };
        const double tK = theta(int(K));
        if (std::abs(tK) < 1e-300)
            throw numeric_error("tridiagonal_gamma_closed_form: matrix is singular for this |delta|.");
        std::vector<double> gamma(K);
        for (std::size_t k = 1; k <= K; ++k)
            gamma[k - 1] = theta(int(k) - 1) * theta(int(K - k)) / tK;
        return gamma;
    }

    LinearUsersBound linear_users_rate_bound(std::size_t K, const ArrayGeometry &geom, double theta, double phi,
                                             double r_min, double r_max, double tau)
    {
        if (K == 0)
            throw std::invalid_argument("linear_users_rate_bound: K must be positive.");
        if (!(r_min > 0.0) || !(r_max > r_min))
            throw std::invalid_argument("linear_users_rate_bound: need 0 < r_min < r_max.");

        LinearUsersBound out;
        if (K == 1)
        {
            out.radii = {r_min};
            out.gamma = {1.0};
            out.rate = out.reachable = std::log2(1.0 + tau);
            return out;
        }

        auto vec = [&](double u) { return focusing_vector(geom, {1.0 / u, theta, phi}); };
        const double u_near = 1.0 / r_min, u_far = 1.0 / r_max;
        std::vector<double> u(K);
        std::vector<ComplexVector> v(K);
        for (std::size_t i = 0; i < K; ++i)
        {
            u[i] = u_near + (u_far - u_near) * double(i) / double(K - 1);
            v[i] = vec(u[i]);
        }
        auto adjacent = [&]
        {
            std::vector<double> c(K - 1);
            for (std::size_t i = 0; i + 1 < K; ++i)
                c[i] = exact_correlation(v[i], v[i + 1]);
            return c;
        };
        auto spread = [](const std::vector<double> &c)
        {
            const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
            return *mx - *mn;
        };

        constexpr std::size_t max_sweeps = 500;
        std::vector<double> c = adjacent();
        while (spread(c) >= 1e-4)
        {
            if (++out.sweeps > max_sweeps)
                throw numeric_error("linear_users_rate_bound: placement did not equalise after " +
                                    std::to_string(max_sweeps) + " sweeps (spread " + std::to_string(spread(c)) + ").");
            for (std::size_t i = 1; i + 1 < K; ++i)
            {
                double lo = u[i + 1], hi = u[i - 1]; // f(lo) < 0 < f(hi)
                for (int it = 0; it < 80 && hi - lo > 1e-15 * hi; ++it)
                {
                    const double mid = 0.5 * (lo + hi);
                    const ComplexVector vm = vec(mid);
                    const double f = exact_correlation(v[i - 1], vm) - exact_correlation(vm, v[i + 1]);
                    (f > 0.0 ? hi : lo) = mid;
                }
                u[i] = 0.5 * (lo + hi);
                v[i] = vec(u[i]);
            }
            c = adjacent();
        }

        out.adjacent = c;
        out.delta_abs = *std::max_element(c.begin(), c.end());
        out.gamma = tridiagonal_gamma(K, out.delta_abs);
        for (const double gk : out.gamma)
        {
            if (!(gk > 0.0))
                throw numeric_error("linear_users_rate_bound: adjacent correlation too large for a valid bound.");
            out.rate += std::log2(1.0 + tau / gk);
        }
        for (const double ui : u)
            out.radii.push_back(1.0 / ui);

        ComplexMatrix B(Eigen::Index(geom.size()), Eigen::Index(K));
        for (std::size_t i = 0; i < K; ++i)
            B.col(Eigen::Index(i)) = v[i];
        out.reachable = zf_rate_from_gram(B.adjoint() * B, Eigen::VectorXd::Constant(Eigen::Index(K), tau));
        return out;
    }

} // namespace ldma
