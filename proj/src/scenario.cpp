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

#include "ldma/experiment.hpp"

namespace ldma
{
    Scenario generate_scenario(const ScenarioConfig &cfg, std::size_t drop_index)
    {
        cfg.validate();
        const ArrayGeometry geom = cfg.geometry();
        const std::uint64_t base = std::uint64_t(drop_index) * streams_per_drop;
        SeededStream users(cfg.seed, base + user_stream);
        SeededStream paths(cfg.seed, base + channel_stream);

        Scenario sc;
        sc.users.reserve(cfg.users);
        sc.channels.reserve(cfg.users);
        for (std::size_t k = 0; k < cfg.users; ++k)
        {
            Location loc;
            loc.r = users.uniform(cfg.r_min, cfg.r_max);
            if (cfg.distribution == UserDistribution::uniform)
            {
                loc.theta = users.uniform(cfg.theta_min, cfg.theta_max);
                loc.phi = users.uniform(cfg.phi_min, cfg.phi_max);
            }
            else
            {
                loc.theta = cfg.line_theta;
                loc.phi = cfg.line_phi;
            }
            sc.users.push_back(loc);
            sc.channels.push_back(generate_channel(geom, loc, cfg.paths, cfg.kappa, cfg.scatter, paths, cfg.model));
        }
        return sc;
    }

} // namespace ldma
