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

#include "ldma/precoding.hpp"
#include "ldma/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace ldma
{
    std::string to_string(AccessScheme scheme)
    {
        switch (scheme)
        {
        case AccessScheme::ldma: return "ldma";
        case AccessScheme::sdma: return "sdma";
        case AccessScheme::fully_digital: return "fully_digital";
        }
        return "unknown";
    }

    ComplexMatrix channel_matrix(const std::vector<ChannelRealization> &channels)
    {
        if (channels.empty())
            throw std::invalid_argument("channel_matrix: no users.");
        const auto n = channels.front().h.size();
        ComplexMatrix H(n, Eigen::Index(channels.size()));
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            if (channels[k].h.size() != n)
                throw std::invalid_argument("channel_matrix: channel lengths differ.");
            H.col(Eigen::Index(k)) = channels[k].h;
        }
        return H;
    }

    std::vector<std::size_t> assign_from_gains(const Eigen::MatrixXd &gains)
    {
        const auto M = std::size_t(gains.rows()), K = std::size_t(gains.cols());
        if (K > M)
            throw std::invalid_argument("beam_sweep_assign: more users than codewords.");

        // Each user only ever needs its K best codewords: at most K - 1 are taken by others.
        struct Candidate
        {
            double gain;
            std::size_t user, word;
        };
        std::vector<Candidate> cand;
        cand.reserve(K * K);
        std::vector<std::size_t> order(M);
        for (std::size_t k = 0; k < K; ++k)
        {
            std::iota(order.begin(), order.end(), std::size_t(0));
            auto better = [&](std::size_t a, std::size_t b)
            {
                const double ga = gains(Eigen::Index(a), Eigen::Index(k)), gb = gains(Eigen::Index(b), Eigen::Index(k));
                return ga != gb ? ga > gb : a < b;
            };
            std::partial_sort(order.begin(), order.begin() + Eigen::Index(K), order.end(), better);
            for (std::size_t i = 0; i < K; ++i)
                cand.push_back({gains(Eigen::Index(order[i]), Eigen::Index(k)), k, order[i]});
        }
        std::sort(cand.begin(), cand.end(),
                  [](const Candidate &a, const Candidate &b)
                  { return std::tie(b.gain, a.user, a.word) < std::tie(a.gain, b.user, b.word); });

        constexpr std::size_t none = std::size_t(-1);
        std::vector<std::size_t> choice(K, none);
        std::vector<bool> taken_user(K, false);
        std::vector<std::size_t> taken_words;
        std::size_t assigned = 0;
        for (const auto &c : cand)
        {
            if (taken_user[c.user] || std::find(taken_words.begin(), taken_words.end(), c.word) != taken_words.end())
                continue;
            choice[c.user] = c.word;
            taken_user[c.user] = true;
            taken_words.push_back(c.word);
            if (++assigned == K)
                break;
        }
        return choice;
    }

    std::vector<std::size_t> beam_sweep_assign(const ComplexMatrix &H, const Codebook &cb)
    {
        if (std::size_t(H.cols()) > cb.size())
            throw std::invalid_argument("beam_sweep_assign: more users than codewords.");
        return assign_from_gains(sweep_gains_parallel(H, cb));
    }

    ComplexMatrix assemble_analog(const Codebook &cb, const std::vector<std::size_t> &indices)
    {
        ComplexMatrix FA(Eigen::Index(cb.geom.size()), Eigen::Index(indices.size()));
        for (std::size_t k = 0; k < indices.size(); ++k)
            FA.col(Eigen::Index(k)) = cb.vector(indices[k]);
        return FA;
    }

    ComplexMatrix effective_channel(const ComplexMatrix &H, const ComplexMatrix &analog, double noise_variance,
                                    SeededStream *stream)
    {
        if (!(noise_variance >= 0.0))
            throw std::invalid_argument("effective_channel: noise variance must be non-negative.");
        if (H.rows() != analog.rows())
            throw std::invalid_argument("effective_channel: dimension mismatch.");
        ComplexMatrix noisy = H;
        if (noise_variance > 0.0)
        {
            if (stream == nullptr)
                throw std::invalid_argument("effective_channel: a random stream is required for noisy estimation.");
            for (Eigen::Index k = 0; k < noisy.cols(); ++k)
                for (Eigen::Index n = 0; n < noisy.rows(); ++n)
                    noisy(n, k) += stream->complex_normal(noise_variance);
        }
        return noisy.adjoint() * analog;
    }

    PrecodingSolution zf_digital(const ComplexMatrix &effective, const ComplexMatrix &analog)
    {
        if (effective.rows() != effective.cols() || effective.cols() != analog.cols())
            throw std::invalid_argument("zf_digital: dimension mismatch.");
        const ComplexMatrix gram = effective * effective.adjoint();
        const ComplexMatrix X = effective.adjoint() * hermitian_inverse(gram);

        PrecodingSolution sol;
        sol.analog = analog;
        sol.digital = X;
        const auto K = X.cols();
        sol.lambda.resize(K);
        sol.power_scale = Eigen::VectorXd::Ones(K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double norm = (analog * X.col(k)).norm();
            if (!(norm > 0.0))
                throw numeric_error("zf_digital: zero-power precoder column.");
            sol.lambda[k] = 1.0 / norm;
            sol.digital.col(k) *= sol.lambda[k];
        }
        return sol;
    }

    double effective_sum_rate(const ComplexMatrix &effective, const ComplexMatrix &V, double noise_variance)
    {
        const Eigen::MatrixXd power = (effective * V).cwiseAbs2(); // (k, j): |hbar_k^H v_j|^2
        double rate = 0.0;
        for (Eigen::Index k = 0; k < power.rows(); ++k)
        {
            const double signal = power(k, k);
            const double interference = power.row(k).sum() - signal;
            rate += std::log2(1.0 + signal / (noise_variance + interference));
        }
        return rate;
    }

    namespace
    {
        // V(mu) = (A + mu Q)^{-1} B with the smallest mu >= 0 such that tr(V^H Q V) <= p
        ComplexMatrix constrained_update(const ComplexMatrix &A, const ComplexMatrix &Q, const ComplexMatrix &B,
                                         double p)
        {
            auto solve = [&](double mu) -> ComplexMatrix
            {
                const ComplexMatrix M = A + mu * Q;
                Eigen::LDLT<ComplexMatrix> ldlt(M);
                if (ldlt.info() == Eigen::Success && ldlt.isPositive())
                {
                    ComplexMatrix V = ldlt.solve(B);
                    if (V.allFinite())
                        return V;
                }
                return M.completeOrthogonalDecomposition().solve(B);
            };
            auto power = [&](const ComplexMatrix &V) { return std::real((V.adjoint() * Q * V).trace()); };

            const double scale = std::max(Q.diagonal().real().maxCoeff(), 1e-300);
            ComplexMatrix V = solve(1e-12 * scale);
            if (V.allFinite() && power(V) <= p)
                return V;

            double lo = 1e-12 * scale, hi = scale;
            while (power(solve(hi)) > p)
            {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e300)
                    throw numeric_error("wmmse_digital: power multiplier search diverged.");
            }
            for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (power(solve(mid)) > p ? lo : hi) = mid;
            }
            return solve(hi);
        }
    } // namespace

    PrecodingSolution wmmse_digital(const ComplexMatrix &effective, const ComplexMatrix &analog, double per_user_power,
                                    double noise_variance, const WmmseOptions &opts, std::vector<double> *trace)
    {
        if (opts.max_iters < 1 || !(opts.tol > 0.0))
            throw std::invalid_argument("wmmse_digital: need max_iters >= 1 and tol > 0.");
        if (!(per_user_power > 0.0) || !(noise_variance > 0.0))
            throw std::invalid_argument("wmmse_digital: power and noise variance must be positive.");

        const PrecodingSolution zf = zf_digital(effective, analog);
        const auto K = effective.rows();
        const ComplexMatrix Q = analog.adjoint() * analog;
        const ComplexMatrix Hh = effective.adjoint(); // column k is hbar_k

        ComplexMatrix V = std::sqrt(per_user_power) * zf.digital;
        double rate = effective_sum_rate(effective, V, noise_variance);
        ComplexMatrix best_V = V;
        double best_rate = rate;

        for (std::size_t it = 0; it < opts.max_iters; ++it)
        {
            const ComplexMatrix R = effective * V; // (k, j): hbar_k^H v_j
            ComplexVector u(K);
            Eigen::VectorXd w(K);
            for (Eigen::Index k = 0; k < K; ++k)
            {
                const double total = R.row(k).cwiseAbs2().sum() + noise_variance;
                u[k] = R(k, k) / total;
                const double mse = 1.0 - std::norm(R(k, k)) / total;
                w[k] = 1.0 / std::max(mse, 1e-300);
            }
            ComplexMatrix A = ComplexMatrix::Zero(K, K);
            for (Eigen::Index k = 0; k < K; ++k)
                A += (w[k] * std::norm(u[k])) * Hh.col(k) * Hh.col(k).adjoint();
            A = 0.5 * (A + A.adjoint()).eval();

            ComplexMatrix B(K, K);
            for (Eigen::Index k = 0; k < K; ++k)
                B.col(k) = (w[k] * u[k]) * Hh.col(k);
            V = constrained_update(A, Q, B, double(K) * per_user_power);

            const double next = effective_sum_rate(effective, V, noise_variance);
            if (trace)
                trace->push_back(next);
            if (next > best_rate)
            {
                best_rate = next;
                best_V = V;
            }
            const bool converged = std::abs(next - rate) <= opts.tol * std::max(std::abs(rate), 1e-12);
            rate = next;
            if (converged)
                break;
        }

        PrecodingSolution sol;
        sol.analog = analog;
        sol.digital = best_V;
        sol.lambda = Eigen::VectorXd::Ones(K);
        sol.power_scale.resize(K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double norm = (analog * best_V.col(k)).norm();
            if (norm > 0.0)
                sol.digital.col(k) /= norm;
            sol.power_scale[k] = norm * norm / per_user_power;
        }
        return sol;
    }

    PrecodingSolution fully_digital_zf(const ComplexMatrix &H)
    {
        if (H.cols() > H.rows())
            throw std::invalid_argument("fully_digital_zf: more users than antennas.");
        const ComplexMatrix X = H * hermitian_inverse(H.adjoint() * H);
        PrecodingSolution sol;
        sol.scheme = AccessScheme::fully_digital;
        sol.analog = X;
        sol.digital = ComplexMatrix::Identity(H.cols(), H.cols());
        sol.lambda.resize(H.cols());
        sol.power_scale = Eigen::VectorXd::Ones(H.cols());
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            const double norm = X.col(k).norm();
            sol.lambda[k] = 1.0 / norm;
            sol.analog.col(k) *= sol.lambda[k];
        }
        return sol;
    }

} // namespace ldma
