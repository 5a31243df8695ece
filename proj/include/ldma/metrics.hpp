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

#ifndef LDMA_METRICS_HPP
#define LDMA_METRICS_HPP

#include "ldma/precoding.hpp"

#include <functional>
#include <vector>

namespace ldma
{
    struct RateReport
    {
        double sum = 0.0;
        std::vector<double> per_user;
    };

    // sum_k log2(1 + p_k |h_k^H F_A f_k|^2 / (sigma^2 + sum_{l != k} p_l |h_k^H F_A f_l|^2)),
    // with p_k scaled by the solution's power_scale
    RateReport spectrum_efficiency(const ComplexMatrix &H, const PrecodingSolution &sol, const Eigen::VectorXd &powers,
                                   double noise_variance);

    // sum_k log2(1 + P N |alpha_k|^2 / (K sigma^2))
    double ideal_capacity(std::size_t K, std::size_t N, const Eigen::VectorXd &alpha_abs, double total_power,
                          double noise_variance);

    // Rate of ZF over an infinite codebook of single-path users:
    // sum_k log2(1 + P N |alpha_k|^2 / (K sigma^2 [(B^H B)^{-1}]_kk))
    double zf_rate_closed_form(const ComplexMatrix &B, const Eigen::VectorXd &alpha_abs, double total_power,
                               double noise_variance);

    // P N |alpha|^2 / (K sigma^2)
    double per_user_snr(double total_power, std::size_t N, double alpha_abs, std::size_t K, double noise_variance);

    struct ThreeUserBound
    {
        double x_hat = 0.0;
        double g_hat = 0.0; // correlation magnitude at x_hat
        double rate = 0.0;
    };

    // Best middle-user position for three collinear users with adjacent correlation
    // magnitudes g(x) and g(r0 - x), neglecting the outer pair's interference.
    // Solves env(x) = env(r0 - x) by bisection, env the decreasing envelope of g, and returns
    // 2 log2(1 + tau (1 - 2G)/(1 - G)) + log2(1 + tau (1 - 2G)) with G = g(x_hat)^2.
    ThreeUserBound three_user_rate_bound(const std::function<double(double)> &g, double r0, double tau);

    // Exact three-user ZF rate with the outer pair's correlation set to zero, G_i = g_i^2
    double three_user_rate(double g1, double g2, double tau);

    // Diagonal of the inverse of the K x K tridiagonal Toeplitz matrix with unit diagonal
    // and off-diagonal magnitude |delta|, via theta_i = theta_{i-1} - |delta|^2 theta_{i-2}.
    std::vector<double> tridiagonal_gamma(std::size_t K, double delta_abs);

    // Same through the characteristic roots of x^2 - x + |delta|^2 (complex when |delta|^2 > 1/4)
    std::vector<double> tridiagonal_gamma_closed_form(std::size_t K, double delta_abs);

    struct LinearUsersBound
    {
        std::vector<double> radii;      // equalised placement, near to far
        std::vector<double> adjacent;   // exact adjacent-pair correlations at convergence
        double delta_abs = 0.0;         // common adjacent correlation
        std::vector<double> gamma;
        double rate = 0.0;              // bound, non-adjacent interference neglected
        double reachable = 0.0;         // exact ZF rate at the same placement
        std::size_t sweeps = 0;
    };

    // K users on a line at a fixed angle within [r_min, r_max]; both end users sit at the ends.
    // Interior users are moved one at a time (bisection in 1/r) until all adjacent exact
    // correlations agree within 1e-4, then the tridiagonal bound is evaluated.
    LinearUsersBound linear_users_rate_bound(std::size_t K, const ArrayGeometry &geom, double theta, double phi,
                                             double r_min, double r_max, double tau);

} // namespace ldma

#endif
