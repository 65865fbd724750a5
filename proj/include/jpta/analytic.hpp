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

#ifndef JPTA_ANALYTIC_HPP
#define JPTA_ANALYTIC_HPP

#include "jpta/linsys.hpp"
#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

namespace jpta
{

// Converts a fitted line (x1, x2) into hardware settings: delay = x2 / (2*pi*delta_f)
// and phase = x1 - 2*pi*f_c*delay, so that phase + 2*pi*f_m*delay = x1 + m' * x2.
struct ElementSetting
{
    double phase;
    double delay;
};
ElementSetting line_to_setting(const FitResult &fit, const FrequencyGrid &grid);

// One system per element; delays normalized to start at zero.
JptaConfig joint_analytic(const ArrayGeometry &geometry, const FrequencyGrid &grid, const UserScenario &scenario,
                          Criterion criterion);

// One system per azimuth row and one per elevation column (n_az + n_el systems).
SeparatedJptaConfig separated_analytic(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                       const UserScenario &scenario, Criterion criterion);

} // namespace jpta

#endif
