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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

namespace
{
    using namespace ldma;

    const ArrayGeometry &ula512()
    {
        static const ArrayGeometry g = ArrayGeometry::ula(512, wavelength_from_frequency(30e9));
        return g;
    }

    const Codebook &polar_codebook()
    {
        static const Codebook cb = build_polar_codebook_ula(ula512(), 0.55, 4.0);
        return cb;
    }

    ComplexMatrix channels(std::size_t K)
    {
        SeededStream rng(1, 0);
        ComplexMatrix H(static_cast<Eigen::Index>(ula512().size()), static_cast<Eigen::Index>(K));
        for (Eigen::Index i = 0; i < H.size(); ++i)
            H.data()[i] = rng.complex_normal();
        return H;
    }

    // Gram matrix of focusing vectors on a grid uniform in 1/r along one direction
    const ComplexMatrix &line_gram()
    {
        static const ComplexMatrix gram = []
        {
            const std::size_t points = 60;
            const double u_lo = 1.0 / 150.0, u_hi = 1.0 / 4.0;
            ComplexMatrix B(static_cast<Eigen::Index>(ula512().size()), static_cast<Eigen::Index>(points));
            for (std::size_t i = 0; i < points; ++i)
            {
                const double u = u_lo + (u_hi - u_lo) * double(i) / double(points - 1);
                B.col(static_cast<Eigen::Index>(i)) = ula_focusing(ula512(), {1.0 / u, std::numbers::pi / 2, 0.0});
            }
            return ComplexMatrix(B.adjoint() * B);
        }();
        return gram;
    }

    void BM_SweepSerial(benchmark::State &state)
    {
        const ComplexMatrix H = channels(static_cast<std::size_t>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(sweep_gains_serial(H, polar_codebook()));
        state.counters["codewords"] = double(polar_codebook().size());
    }

    void BM_SweepParallel(benchmark::State &state)
    {
        const ComplexMatrix H = channels(static_cast<std::size_t>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(sweep_gains_parallel(H, polar_codebook()));
        state.counters["codewords"] = double(polar_codebook().size());
    }

    void BM_PlacementSerial(benchmark::State &state)
    {
        const auto K = static_cast<std::size_t>(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(exhaustive_placement_serial(line_gram(), K, 100.0));
    }

    void BM_PlacementParallel(benchmark::State &state)
    {
        const auto K = static_cast<std::size_t>(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(exhaustive_placement_parallel(line_gram(), K, 100.0));
    }
} // namespace

BENCHMARK(BM_SweepSerial)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PlacementSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PlacementParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
