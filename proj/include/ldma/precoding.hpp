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

#ifndef LDMA_PRECODING_HPP
#define LDMA_PRECODING_HPP

#include "ldma/codebook.hpp"

#include <string>
#include <vector>

namespace ldma
{
    enum class AccessScheme
    {
        ldma,         // near-field codebook, users separated by location
        sdma,         // far-field codebook, users separated by angle
        fully_digital // ZF on the full channel, no analog stage
    };

    std::string to_string(AccessScheme scheme);

    struct PrecodingSolution
    {
        ComplexMatrix analog;        // N x K, F_A
        ComplexMatrix digital;       // K x K, columns f_{D,k}
        Eigen::VectorXd lambda;      // normalisation applied to each ZF column
        Eigen::VectorXd power_scale; // power radiated for user k in units of p_k; sums to at most K; zero for a user switched off
        AccessScheme scheme = AccessScheme::ldma;

        // F_A F_D, the N x K per-user transmit directions (unit-norm columns)
        ComplexMatrix transmit() const { return analog * digital; }
    };

    // Stacks the channel vectors as the columns of an N x K matrix
    ComplexMatrix channel_matrix(const std::vector<ChannelRealization> &channels);

    // Chooses one codeword per user by descending |w^H h_k|. All choices are distinct:
    // a codeword wanted by several users goes to the one with the higher gain and the
    // others fall back to their next-best free codeword. Ties go to the lower user index.
    std::vector<std::size_t> beam_sweep_assign(const ComplexMatrix &H, const Codebook &cb);

    // Same rule on a precomputed M x K gain matrix |w_m^H h_k|
    std::vector<std::size_t> assign_from_gains(const Eigen::MatrixXd &gains);

    ComplexMatrix assemble_analog(const Codebook &cb, const std::vector<std::size_t> &indices);

    // K x K effective channel; row k is (h_k + n_k)^H F_A with n_k ~ CN(0, noise_variance I).
    // stream may be null when noise_variance is zero.
    ComplexMatrix effective_channel(const ComplexMatrix &H, const ComplexMatrix &analog, double noise_variance,
                                    SeededStream *stream);

    // F_D = Hbar^H (Hbar Hbar^H)^{-1} with columns scaled so that ||F_A f_{D,k}|| = 1
    PrecodingSolution zf_digital(const ComplexMatrix &effective, const ComplexMatrix &analog);

    struct WmmseOptions
    {
        std::size_t max_iters = 100;
        double tol = 1e-6; // relative sum-rate improvement
    };

    // Alternating MMSE receiver / weight / precoder updates on the effective channel with
    // a total budget sum_k ||F_A v_k||^2 <= K per_user_power, started from the ZF point.
    // trace, if given, receives the sum rate (on the effective channel) after each iteration.
    PrecodingSolution wmmse_digital(const ComplexMatrix &effective, const ComplexMatrix &analog, double per_user_power,
                                    double noise_variance, const WmmseOptions &opts = {},
                                    std::vector<double> *trace = nullptr);

    // ZF on the true N x K channel, unit-norm columns
    PrecodingSolution fully_digital_zf(const ComplexMatrix &H);

    // Sum rate of a K x K effective channel with transmit columns V (powers inside V)
    double effective_sum_rate(const ComplexMatrix &effective, const ComplexMatrix &V, double noise_variance);

} // namespace ldma

#endif
