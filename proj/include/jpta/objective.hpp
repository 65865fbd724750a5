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

#ifndef JPTA_OBJECTIVE_HPP
#define JPTA_OBJECTIVE_HPP

#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <vector>

namespace jpta
{

// Mean gain of every user over its own subband.
std::vector<double> user_mean_gains(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                    const JptaConfig &config, const UserScenario &scenario);
std::vector<double> user_mean_gains(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                    const SeparatedJptaConfig &config, const UserScenario &scenario);

// Log-mean objective G_l in dB.
double objective_db(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                    const UserScenario &scenario);
double objective_db(const ArrayGeometry &geometry, const FrequencyGrid &grid, const SeparatedJptaConfig &config,
                    const UserScenario &scenario);

// Upper bound of G_l: every user at the full array gain.
double objective_ceiling_db(const ArrayGeometry &geometry, std::size_t n_users);

} // namespace jpta

#endif
