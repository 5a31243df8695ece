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

#ifndef LDMA_NUMERICS_HPP
#define LDMA_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ldma
{
    using cd = std::complex<double>;
    using ComplexVector = Eigen::VectorXcd;
    using ComplexMatrix = Eigen::MatrixXcd;

    // Raised when a computation is well-posed but numerically unusable
    // (singular matrix, bracketing failure, iteration cap hit).
    class numeric_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt and S(x) = int_0^x sin(pi t^2 / 2) dt.
    // Absolute error below 1e-12 for all finite x; odd in x.
    double fresnel_c(double x);
    double fresnel_s(double x);
    cd fresnel_cs(double x); // C(x) + j S(x) in one pass

    // (C(x) + j S(x)) / x, continued to 1 at x = 0
    cd fresnel_ratio(double x);

    // Si(x) = int_0^x sin(t)/t dt
    double sine_integral(double x);

    // sin(N a / 2) / (N sin(a / 2)), continuous at a = 0 mod 2 pi
    double dirichlet_sinc(std::size_t n, double alpha);

    // Inverse of a small Hermitian matrix. Throws numeric_error when the reciprocal
    // condition estimate is below 1e-12 (e.g. two users with identical beams).
    ComplexMatrix hermitian_inverse(const ComplexMatrix &m);

    // Independent pseudo-random stream identified by (master_seed, stream_index).
    // The pair is hashed into the engine seed sequence, so streams can be created
    // in any order and on any thread with the same result.
    class SeededStream
    {
    public:
        SeededStream(std::uint64_t master_seed, std::uint64_t stream_index);

        std::uint64_t next_u64();
        double uniform(double lo, double hi);
        double normal();
        cd complex_normal(double variance = 1.0); // CN(0, variance)

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

} // namespace ldma

#endif
