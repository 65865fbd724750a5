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

#include "jpta/analytic.hpp"

#include "jpta/gain.hpp"

#include <stdexcept>

namespace jpta
{

ElementSetting line_to_setting(const FitResult &fit, const FrequencyGrid &grid)
{
    const double delay = fit.slope_var / (two_pi * grid.spacing());
    return {wrap_phase(fit.phase_var - two_pi * grid.carrier() * delay), delay};
}

JptaConfig joint_analytic(const ArrayGeometry &geometry, const FrequencyGrid &grid, const UserScenario &scenario,
                          Criterion criterion)
{
    if (scenario.m_count() != grid.count())
        throw std::invalid_argument("joint_analytic: scenario partition does not match the subcarrier grid");

    JptaConfig config = JptaConfig::zeros(geometry);
    for (std::size_t y = 0; y < geometry.n_az(); ++y)
        for (std::size_t z = 0; z < geometry.n_el(); ++z)
        {
            const auto setting = line_to_setting(solve(build_system(geometry, grid, scenario, y, z), criterion), grid);
            config.phase(y, z) = setting.phase;
            config.delay(y, z) = setting.delay;
        }
    return normalize_delays(config, grid.carrier()).config;
}

SeparatedJptaConfig separated_analytic(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                       const UserScenario &scenario, Criterion criterion)
{
    if (scenario.m_count() != grid.count())
        throw std::invalid_argument("separated_analytic: scenario partition does not match the subcarrier grid");

    SeparatedJptaConfig config = SeparatedJptaConfig::zeros(geometry);
    std::vector<double> nus(scenario.user_count());

    for (std::size_t y = 0; y < geometry.n_az(); ++y)
    {
        for (std::size_t i = 0; i < nus.size(); ++i)
            nus[i] = nu_az(y, scenario.directions()[i]);
        const auto setting = line_to_setting(solve(build_system(scenario, nus), criterion), grid);
        config.phase_az[y] = setting.phase;
        config.delay_az[y] = setting.delay;
    }
    for (std::size_t z = 0; z < geometry.n_el(); ++z)
    {
        for (std::size_t i = 0; i < nus.size(); ++i)
            nus[i] = nu_el(z, scenario.directions()[i]);
        const auto setting = line_to_setting(solve(build_system(scenario, nus), criterion), grid);
        config.phase_el[z] = setting.phase;
        config.delay_el[z] = setting.delay;
    }
    return normalize_delays(config, grid.carrier());
}

} // namespace jpta
