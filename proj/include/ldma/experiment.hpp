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

#ifndef LDMA_EXPERIMENT_HPP
#define LDMA_EXPERIMENT_HPP

#include "ldma/config.hpp"
#include "ldma/metrics.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ldma
{
    // Random stream layout per drop: users, channels, then one estimation-noise stream per scheme
    constexpr std::uint64_t streams_per_drop = 16;
    constexpr std::uint64_t user_stream = 0;
    constexpr std::uint64_t channel_stream = 1;
    constexpr std::uint64_t noise_stream_base = 2;

    struct Scenario
    {
        std::vector<Location> users;
        std::vector<ChannelRealization> channels;
    };

    // Users are drawn one after another from the drop's user stream (so user k is the same
    // for every K >= k) and channels likewise from the channel stream.
    Scenario generate_scenario(const ScenarioConfig &cfg, std::size_t drop_index);

    // Codebooks shared by all drops of one experiment
    struct CodebookSet
    {
        std::shared_ptr<const Codebook> near_field, far_field, uniform_radius;
    };
    CodebookSet build_codebooks(const ScenarioConfig &cfg);

    struct SchemeOutcome
    {
        double sum_rate = 0.0;
        std::vector<double> user_rates;
        std::size_t served = 0;
    };

    struct DropResult
    {
        std::size_t drop = 0;
        std::vector<std::vector<SchemeOutcome>> outcomes; // [snr][scheme]
    };

    struct ExperimentResult
    {
        ScenarioConfig config;
        std::vector<DropResult> drops;
        std::vector<std::vector<double>> mean, stddev; // [snr][scheme]
        std::size_t near_field_codebook_size = 0;
        std::size_t far_field_codebook_size = 0;
        std::size_t uniform_codebook_size = 0;
    };

    // Serves one drop with every configured scheme and SNR
    DropResult run_drop(const ScenarioConfig &cfg, const CodebookSet &books, std::size_t drop_index);

    // Drops run in parallel and are merged in drop order; results do not depend on threads
    ExperimentResult run_experiment(const ScenarioConfig &cfg);

    // Writes <stem>_summary.csv, <stem>_drops.csv and <stem>.json into dir
    void write_experiment(const ExperimentResult &res, const std::string &dir, const std::string &stem);

    // Output directory: explicit value, else $LDMA_OUT_DIR, else "."
    std::string resolve_output_dir(const std::string &requested);

    std::string format_number(double v);

} // namespace ldma

#endif
