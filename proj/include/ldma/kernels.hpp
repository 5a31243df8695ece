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

#ifndef LDMA_KERNELS_HPP
#define LDMA_KERNELS_HPP

#include "ldma/codebook.hpp"

#include <cstddef>
#include <vector>

namespace ldma
{
    // M x K matrix of |w_m^H h_k| over the whole codebook. The parallel version splits the
    // codebook into fixed blocks across OpenMP threads and returns the same bits as the
    // serial reference.
    Eigen::MatrixXd sweep_gains_serial(const ComplexMatrix &H, const Codebook &cb);
    Eigen::MatrixXd sweep_gains_parallel(const ComplexMatrix &H, const Codebook &cb);

    struct PlacementSearch
    {
        double best_rate = 0.0;
        std::vector<std::size_t> best; // ascending grid indices
        std::size_t evaluated = 0;
    };

    // Maximises sum_k log2(1 + tau / [T^{-1}]_kk) over all K-subsets of candidate positions,
    // T the principal submatrix of the candidates' Gram matrix. Subsets whose T is not
    // numerically positive definite are skipped. Ties go to the lexicographically first subset.
    PlacementSearch exhaustive_placement_serial(const ComplexMatrix &gram, std::size_t K, double tau);
    PlacementSearch exhaustive_placement_parallel(const ComplexMatrix &gram, std::size_t K, double tau);

    // sum_k log2(1 + tau / [T^{-1}]_kk) for a K x K Hermitian T (K <= 16); false when T is
    // not positive definite.
    bool zf_subset_rate(const ComplexMatrix &gram, const std::size_t *idx, std::size_t K, double tau, double &rate);

} // namespace ldma

#endif
