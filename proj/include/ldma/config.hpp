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

#ifndef LDMA_CONFIG_HPP
#define LDMA_CONFIG_HPP

#include "ldma/array.hpp"
#include "ldma/precoding.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldma
{
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class UserDistribution
    {
        uniform, // r, theta, phi uniform over the configured ranges
        linear   // r uniform, all users at one fixed (theta, phi)
    };

    enum class AnalogKind
    {
        ldma,           // near-field codebook sweep
        sdma,           // far-field DFT codebook sweep
        uniform_radius, // size-matched uniformly spaced near-field rings
        ldma_ideal,     // exact LoS focusing vector per user, no codebook
        sdma_ideal,     // exact LoS steering vector per user, no codebook
        fully_digital   // ZF on the full channel
    };

    enum class DigitalKind
    {
        zf,
        wmmse
    };

    struct SchemeSpec
    {
        AnalogKind analog = AnalogKind::ldma;
        DigitalKind digital = DigitalKind::zf;
        std::string label() const;
    };

    // "ldma-zf", "sdma-wmmse", "uniform-zf", "ldma_inf-zf", "sdma_inf-zf", "fd-zf"
    SchemeSpec parse_scheme(const std::string &text);
    std::string to_string(AnalogKind kind);

    struct ScenarioConfig
    {
        std::string name = "scenario";

        // array
        Layout layout = Layout::ula;
        std::size_t n1 = 512, n2 = 1;
        double frequency_hz = 30e9;
        double spacing = 0.0; // 0 -> half wavelength

        // users
        std::size_t users = 10;
        UserDistribution distribution = UserDistribution::uniform;
        double r_min = 4.0, r_max = 100.0;
        double theta_min = 1.5707963267948966, theta_max = 1.5707963267948966;
        double phi_min = -1.0471975511965976, phi_max = 1.0471975511965976;
        double line_theta = 1.5707963267948966, line_phi = 0.0;

        // channel
        std::size_t paths = 5;
        double kappa = 8.0;
        ChannelModel model = ChannelModel::near_field;
        ScatterRegion scatter; // defaults to the user region

        // link
        std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0, 20.0};
        double noise_variance = 1.0;
        double estimation_noise = 0.0;

        // schemes
        std::vector<SchemeSpec> schemes{{AnalogKind::ldma, DigitalKind::zf}, {AnalogKind::sdma, DigitalKind::zf}};

        // codebook
        double delta = 0.55;
        double rho_min = 0.0; // 0 -> r_min
        std::size_t uniform_rings = 0; // 0 -> as many rings as the near-field codebook

        // wmmse
        WmmseOptions wmmse;

        // run
        std::size_t drops = 10;
        std::uint64_t seed = 1;
        int threads = 0; // 0 -> OpenMP default

        ArrayGeometry geometry() const;
        double codebook_rho_min() const { return rho_min > 0.0 ? rho_min : r_min; }
        void validate() const; // throws config_error
    };

    // INI-style file: [section] headers with key = value lines, '#' or ';' comments
    ScenarioConfig load_config(const std::string &path);
    ScenarioConfig parse_config(const std::string &text);

    // Resolved configuration as INI text (round-trips through parse_config)
    std::string config_to_ini(const ScenarioConfig &cfg);

} // namespace ldma

#endif
