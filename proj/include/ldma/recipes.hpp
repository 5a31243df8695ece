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

#ifndef LDMA_RECIPES_HPP
#define LDMA_RECIPES_HPP

#include "ldma/experiment.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ldma
{
    struct RecipeOptions
    {
        std::string out_dir;                // resolved through resolve_output_dir
        std::optional<std::uint64_t> seed;  // overrides the recipe seed
        std::optional<std::size_t> drops;   // overrides the recipe drop count
        int threads = 0;
    };

    std::vector<std::string> recipe_ids();

    // Writes <out>/<id>.csv (plus any auxiliary CSVs) and <out>/<id>.json describing the
    // columns and the setup. Unknown ids raise config_error listing the valid ones.
    void run_recipe(const std::string &id, const RecipeOptions &opts);

    // Configuration used by the simulation recipes at one sweep point
    ScenarioConfig recipe_base_config(const std::string &id);

    // Table rows produced by the linear-placement comparison for one user count
    struct LinearComparisonRow
    {
        std::size_t K = 0;
        double bound = 0.0;       // tridiagonal bound, neighbours-only interference
        double reachable = 0.0;   // exact ZF rate at the bound's placement
        double exhaustive = NAN;  // best placement on the candidate grid (small K only)
        double random_linear = 0.0;
        double far_field = 0.0;
        double delta_abs = 0.0;
    };

    struct LinearComparisonSetup
    {
        std::size_t n = 512;
        double frequency_hz = 30e9;
        double r_min = 4.0, r_max = 150.0;
        double snr_db = 12.0;
        std::size_t grid_points = 200;   // exhaustive-search candidates, uniform in 1/r
        std::size_t exhaustive_max_k = 4;
        std::size_t drops = 100;          // random placements per K
        std::uint64_t seed = 1;
        int threads = 0;
    };

    std::vector<LinearComparisonRow> linear_comparison(const LinearComparisonSetup &setup,
                                                       const std::vector<std::size_t> &user_counts);

} // namespace ldma

#endif
