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

#include "ldma/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace ldma
{
    namespace
    {
        constexpr std::size_t block_size = 256;
        constexpr std::size_t max_subset = 16;

        void gains_block(const ComplexMatrix &H, const Codebook &cb, std::size_t begin, std::size_t end,
                         Eigen::MatrixXd &out)
        {
            const auto rows = Eigen::Index(end - begin);
            if (cb.vectors)
            {
                out.middleRows(Eigen::Index(begin), rows) =
                    (cb.vectors->middleCols(Eigen::Index(begin), rows).adjoint() * H).cwiseAbs();
                return;
            }
            ComplexMatrix W(H.rows(), rows);
            for (std::size_t i = begin; i < end; ++i)
                W.col(Eigen::Index(i - begin)) = codeword_vector(cb.geom, cb.words[i]);
            out.middleRows(Eigen::Index(begin), rows) = (W.adjoint() * H).cwiseAbs();
        }

        void check_sweep(const ComplexMatrix &H, const Codebook &cb)
        {
            if (std::size_t(H.rows()) != cb.geom.size())
                throw std::invalid_argument("Channel length does not match the codebook array size.");
        }

        // Advance idx to the next K-combination of {0..n-1} whose first element is fixed.
        bool next_combination(std::size_t *idx, std::size_t K, std::size_t n)
        {
            std::size_t i = K;
            while (i > 1)
            {
                --i;
                if (idx[i] < n - K + i)
                {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < K; ++j)
                        idx[j] = idx[j - 1] + 1;
                    return true;
                }
            }
            return false;
        }

        void search_from(const ComplexMatrix &gram, std::size_t K, double tau, std::size_t first,
                         PlacementSearch &best)
        {
            const std::size_t n = std::size_t(gram.rows());
            if (first + K > n)
                return;
            std::size_t idx[max_subset];
            for (std::size_t j = 0; j < K; ++j)
                idx[j] = first + j;
            do
            {
                double rate = 0.0;
                ++best.evaluated;
                if (zf_subset_rate(gram, idx, K, tau, rate) && rate > best.best_rate)
                {
                    best.best_rate = rate;
                    best.best.assign(idx, idx + K);
                }
            } while (next_combination(idx, K, n));
        }

        void check_search(const ComplexMatrix &gram, std::size_t K)
        {
            if (gram.rows() != gram.cols())
                throw std::invalid_argument("Gram matrix must be square.");
            if (K == 0 || K > max_subset || K > std::size_t(gram.rows()))
                throw std::invalid_argument("Subset size must lie in [1, min(16, candidates)].");
        }
    } // namespace

    Eigen::MatrixXd sweep_gains_serial(const ComplexMatrix &H, const Codebook &cb)
    {
        check_sweep(H, cb);
        Eigen::MatrixXd out(Eigen::Index(cb.size()), H.cols());
        for (std::size_t b = 0; b < cb.size(); b += block_size)
            gains_block(H, cb, b, std::min(cb.size(), b + block_size), out);
        return out;
    }

    Eigen::MatrixXd sweep_gains_parallel(const ComplexMatrix &H, const Codebook &cb)
    {
        check_sweep(H, cb);
        Eigen::MatrixXd out(Eigen::Index(cb.size()), H.cols());
        const auto blocks = std::int64_t((cb.size() + block_size - 1) / block_size);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t b = 0; b < blocks; ++b)
        {
            const std::size_t begin = std::size_t(b) * block_size;
            gains_block(H, cb, begin, std::min(cb.size(), begin + block_size), out);
        }
        return out;
    }

    bool zf_subset_rate(const ComplexMatrix &gram, const std::size_t *idx, std::size_t K, double tau, double &rate)
    {
        // Cholesky T = L L^H, then [T^{-1}]_kk = sum_i |(L^{-1})_ik|^2
        cd L[max_subset][max_subset];
        for (std::size_t i = 0; i < K; ++i)
        {
            for (std::size_t j = 0; j <= i; ++j)
            {
                cd s = gram(Eigen::Index(idx[i]), Eigen::Index(idx[j]));
                for (std::size_t p = 0; p < j; ++p)
                    s -= L[i][p] * std::conj(L[j][p]);
                if (i == j)
                {
                    if (!(s.real() > 1e-12))
                        return false;
                    L[i][i] = std::sqrt(s.real());
                }
                else
                    L[i][j] = s / L[j][j].real();
            }
        }
        // Column k of L^{-1} by forward substitution from row k (entries above k vanish)
        double diag[max_subset] = {};
        cd col[max_subset];
        for (std::size_t k = 0; k < K; ++k)
        {
            for (std::size_t i = 0; i < K; ++i)
            {
                if (i < k)
                {
                    col[i] = 0.0;
                    continue;
                }
                cd s = i == k ? cd(1.0) : cd(0.0);
                for (std::size_t p = k; p < i; ++p)
                    s -= L[i][p] * col[p];
                col[i] = s / L[i][i].real();
                diag[k] += std::norm(col[i]);
            }
        }
        rate = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            rate += std::log2(1.0 + tau / diag[k]);
        return true;
    }

    PlacementSearch exhaustive_placement_serial(const ComplexMatrix &gram, std::size_t K, double tau)
    {
        check_search(gram, K);
        PlacementSearch best;
        best.best_rate = -std::numeric_limits<double>::infinity();
        for (std::size_t first = 0; first < std::size_t(gram.rows()); ++first)
            search_from(gram, K, tau, first, best);
        return best;
    }

    PlacementSearch exhaustive_placement_parallel(const ComplexMatrix &gram, std::size_t K, double tau)
    {
        check_search(gram, K);
        const auto n = std::int64_t(gram.rows());
        std::vector<PlacementSearch> partial(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t first = 0; first < n; ++first)
        {
            partial[std::size_t(first)].best_rate = -std::numeric_limits<double>::infinity();
            search_from(gram, K, tau, std::size_t(first), partial[std::size_t(first)]);
        }
        // Merge in the serial visiting order so ties resolve identically
        PlacementSearch best;
        best.best_rate = -std::numeric_limits<double>::infinity();
        for (const auto &p : partial)
        {
            best.evaluated += p.evaluated;
            if (p.best_rate > best.best_rate)
            {
                best.best_rate = p.best_rate;
                best.best = p.best;
            }
        }
        return best;
    }

} // namespace ldma
