// SPDX-License-Identifier: Apache-2.0
//
// jpta-beam: frequency-dependent 3D beam design for joint phase-time arrays
// Copyright (C) 2026 The jpta-beam authors
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

#include "jpta/objective.hpp"

#include "jpta/gain.hpp"

#include <stdexcept>

namespace jpta
{

namespace
{

void check(const FrequencyGrid &grid, const UserScenario &scenario)
{
    if (scenario.m_count() != grid.count())
        throw std::invalid_argument("scenario partition does not match the subcarrier grid");
}

} // namespace

std::vector<double> user_mean_gains(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                    const JptaConfig &config, const UserScenario &scenario)
{
    check(grid, scenario);
    std::vector<double> out;
    out.reserve(scenario.user_count());
    for (std::size_t i = 0; i < scenario.user_count(); ++i)
        out.push_back(user_mean_gain(geometry, grid, config, scenario.directions()[i], scenario.subbands()[i]));
    return out;
}

std::vector<double> user_mean_gains(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                    const SeparatedJptaConfig &config, const UserScenario &scenario)
{
    check(grid, scenario);
    std::vector<double> out;
    out.reserve(scenario.user_count());
    for (std::size_t i = 0; i < scenario.user_count(); ++i)
        out.push_back(user_mean_gain(geometry, grid, config, scenario.directions()[i], scenario.subbands()[i]));
    return out;
}

double objective_db(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                    const UserScenario &scenario)
{
    return log_mean_gain(user_mean_gains(geometry, grid, config, scenario));
}

double objective_db(const ArrayGeometry &geometry, const FrequencyGrid &grid, const SeparatedJptaConfig &config,
                    const UserScenario &scenario)
{
    return log_mean_gain(user_mean_gains(geometry, grid, config, scenario));
}

double objective_ceiling_db(const ArrayGeometry &geometry, std::size_t n_users)
{
    return static_cast<double>(n_users) * to_db(static_cast<double>(geometry.element_count()));
}

} // namespace jpta
