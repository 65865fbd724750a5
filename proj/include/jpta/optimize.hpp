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

#ifndef JPTA_OPTIMIZE_HPP
#define JPTA_OPTIMIZE_HPP

#include "jpta/incremental.hpp"
#include "jpta/quantize.hpp"
#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace jpta
{

struct OptimizerSettings
{
    // Relative convergence threshold on G_l between consecutive sweeps (or GD windows).
    double zeta = 1e-3;
    // Sweep cap for the greedy search.
    std::size_t max_sweeps = 100;
    // Adam step size. Phases are stepped in radians, delays in nanoseconds.
    double learning_rate = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    // Step cap and convergence window for gradient descent.
    std::size_t gd_max_steps = 3000;
    std::size_t gd_window = 50;
    // Reserved; every algorithm here is deterministic.
    std::uint64_t seed = 0;

    void validate() const;
};

template <typename Config>
struct OptimizationTrace
{
    // G_l in dB: initial value, then one entry per greedy sweep or GD step.
    std::vector<double> objective_history;
    // GD only: loss (G_l,max - G_l)^2 per step in the continuous domain.
    std::vector<double> loss_history;
    std::size_t sweeps_run = 0;
    bool converged = false;
    Config final_config;
};

// Algorithm-1 style coordinate ascent on the quantization grids. Every sweep
// scans the delay grid for each element (row-major), then the phase grid, and
// moves a coordinate only when G_l strictly improves. The init is quantized
// first (carrier-compensated).
OptimizationTrace<JptaConfig> greedy_optimize_joint(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                                    const UserScenario &scenario, const JptaConfig &init,
                                                    const QuantizationSpec &spec,
                                                    const OptimizerSettings &settings);

// Same sweep structure over the axis vectors: azimuth delays, elevation delays,
// azimuth phases, elevation phases.
OptimizationTrace<SeparatedJptaConfig> greedy_optimize_separated(const ArrayGeometry &geometry,
                                                                 const FrequencyGrid &grid,
                                                                 const UserScenario &scenario,
                                                                 const SeparatedJptaConfig &init,
                                                                 const QuantizationSpec &spec,
                                                                 const OptimizerSettings &settings);

struct Gradient
{
    ElementMatrix phase; // dG_l / dphase, dB per radian
    ElementMatrix delay; // dG_l / ddelay, dB per second
};

// Analytic partial derivatives of G_l. Throws std::domain_error when a user's
// mean gain has collapsed to zero.
Gradient gl_gradient(const ArrayGeometry &geometry, const FrequencyGrid &grid, const UserScenario &scenario,
                     const JptaConfig &config);

// Adam on F = (G_l,max - G_l)^2 with G_l,max = N_u * 10 log10(n_az n_el). Starts
// from the quantized init, optimizes continuous variables, and quantizes the
// final iterate. Throws std::runtime_error when the loss becomes non-finite.
OptimizationTrace<JptaConfig> gd_optimize(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                          const UserScenario &scenario, const JptaConfig &init,
                                          const QuantizationSpec &spec, const OptimizerSettings &settings);
OptimizationTrace<SeparatedJptaConfig> gd_optimize(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                                   const UserScenario &scenario, const SeparatedJptaConfig &init,
                                                   const QuantizationSpec &spec,
                                                   const OptimizerSettings &settings);

} // namespace jpta

#endif
