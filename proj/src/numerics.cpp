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

#include "ldma/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ldma
{
    namespace
    {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        constexpr double fpmin = std::numeric_limits<double>::min() / eps;
        constexpr int max_iter = 500;

        void require_finite(double x, const char *what)
        {
            if (!std::isfinite(x))
                throw std::domain_error(std::string(what) + ": argument must be finite.");
        }

        // Power series on [0, 1.5], complex continued fraction for erfc beyond.
        cd fresnel_nonneg(double x)
        {
            constexpr double pi = std::numbers::pi;
            if (x == 0.0)
                return {0.0, 0.0};

            if (x <= 1.5)
            {
                const double t = 0.5 * pi * x * x;
                double term = x, c = x, s = 0.0;
                for (int k = 1; k < max_iter; ++k)
                {
                    term *= t / k;
                    const double contrib = term / (2 * k + 1);
                    switch (k % 4)
                    {
                    case 1: s += contrib; break;
                    case 2: c -= contrib; break;
                    case 3: s -= contrib; break;
                    default: c += contrib; break;
                    }
                    if (contrib < eps * std::max(std::abs(c), std::abs(s)))
                        break;
                }
                return {c, s};
            }

            cd b(1.0, -pi * x * x);
            cd cc = 1.0 / fpmin;
            cd d = 1.0 / b;
            cd h = d;
            int n = -1;
            for (int k = 2; k < max_iter; ++k)
            {
                n += 2;
                const double a = -double(n) * double(n + 1);
                b += 4.0;
                d = 1.0 / (a * d + b);
                cc = b + a / cc;
                const cd del = cc * d;
                h *= del;
                if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
                    break;
            }
            h *= cd(x, -x);
            const double phase = 0.5 * pi * x * x;
            return cd(0.5, 0.5) * (1.0 - cd(std::cos(phase), std::sin(phase)) * h);
        }
    } // namespace

    cd fresnel_cs(double x)
    {
        require_finite(x, "fresnel");
        const cd v = fresnel_nonneg(std::abs(x));
        return x < 0.0 ? -v : v;
    }

    double fresnel_c(double x) { return fresnel_cs(x).real(); }
    double fresnel_s(double x) { return fresnel_cs(x).imag(); }

    cd fresnel_ratio(double x)
    {
        require_finite(x, "fresnel_ratio");
        const double ax = std::abs(x);
        if (ax < 1e-4)
        {
            // C(x)/x = 1 - pi^2 x^4 / 40 + ..., S(x)/x = pi x^2 / 6 - ...
            constexpr double pi = std::numbers::pi;
            const double x2 = x * x;
            return {1.0 - pi * pi * x2 * x2 / 40.0, pi * x2 / 6.0};
        }
        return fresnel_cs(x) / x;
    }

    double sine_integral(double x)
    {
        require_finite(x, "sine_integral");
        const double t = std::abs(x);
        if (t == 0.0)
            return 0.0;

        double si = 0.0;
        if (t > 2.0)
        {
            // Continued fraction for E1(i t)
            cd b(1.0, t);
            cd c = 1.0 / fpmin;
            cd d = 1.0 / b;
            cd h = d;
            for (int i = 2; i < max_iter; ++i)
            {
                const double a = -double(i - 1) * double(i - 1);
                b += 2.0;
                d = 1.0 / (a * d + b);
                c = b + a / c;
                const cd del = c * d;
                h *= del;
                if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
                    break;
            }
            h = cd(std::cos(t), -std::sin(t)) * h;
            si = 0.5 * std::numbers::pi + h.imag();
        }
        else
        {
            double fact = 1.0, sign = 1.0;
            for (int k = 1; k < max_iter; k += 2)
            {
                if (k > 1)
                    fact *= t / (k - 1);
                fact *= t / k;
                const double term = fact / k;
                si += sign * term;
                sign = -sign;
                if (term < eps * std::abs(si))
                    break;
            }
        }
        return x < 0.0 ? -si : si;
    }

    double dirichlet_sinc(std::size_t n, double alpha)
    {
        if (n == 0)
            throw std::invalid_argument("dirichlet_sinc: N must be positive.");
        require_finite(alpha, "dirichlet_sinc");
        const double half = 0.5 * alpha;
        const double den = std::sin(half);
        if (std::abs(den) < 1e-13)
        {
            // alpha = 2 pi m: limit is (-1)^{m (N - 1)}
            const double m = std::round(half / std::numbers::pi);
            const bool odd = std::fmod(std::abs(m) * double(n - 1), 2.0) == 1.0;
            return odd ? -1.0 : 1.0;
        }
        return std::sin(double(n) * half) / (double(n) * den);
    }

    ComplexMatrix hermitian_inverse(const ComplexMatrix &m)
    {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw std::invalid_argument("hermitian_inverse: matrix must be square and non-empty.");
        if (!m.allFinite())
            throw std::domain_error("hermitian_inverse: matrix has non-finite entries.");

        Eigen::PartialPivLU<ComplexMatrix> lu(m);
        const double rcond = lu.rcond();
        if (!(rcond >= 1e-12))
            throw numeric_error("hermitian_inverse: matrix is singular or ill-conditioned (rcond = " +
                                std::to_string(rcond) + "); coincident user locations?");
        ComplexMatrix inv = lu.inverse();
        return 0.5 * (inv + inv.adjoint());
    }

    SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t stream_index)
    {
        std::seed_seq seq{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32),
                          std::uint32_t(stream_index), std::uint32_t(stream_index >> 32),
                          std::uint32_t(0x9E3779B9u)};
        engine_.seed(seq);
    }

    std::uint64_t SeededStream::next_u64() { return engine_(); }

    double SeededStream::uniform(double lo, double hi)
    {
        std::uniform_real_distribution<double> dist(lo, hi);
        return lo == hi ? lo : dist(engine_);
    }

    double SeededStream::normal() { return normal_(engine_); }

    cd SeededStream::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

} // namespace ldma
