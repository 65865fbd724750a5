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

#include "jpta/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jpta
{

void OptimizerSettings::validate() const
{
    if (!(zeta > 0.0))
        throw std::invalid_argument("OptimizerSettings: zeta must be positive");
    if (!(learning_rate > 0.0))
        throw std::invalid_argument("OptimizerSettings: learning_rate must be positive");
    if (max_sweeps == 0 || gd_max_steps == 0 || gd_window == 0)
        throw std::invalid_argument("OptimizerSettings: sweep, step, and window counts must be at least 1");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0))
        throw std::invalid_argument("OptimizerSettings: invalid Adam decay parameters");
}

namespace
{

std::vector<double> delay_grid(const QuantizationSpec &spec)
{
    std::vector<double> out(spec.delay_levels());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = static_cast<double>(k) * spec.tau_step;
    return out;
}

std::vector<double> phase_grid(const QuantizationSpec &spec)
{
    std::vector<double> out(std::size_t{1} << spec.phase_bits);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = static_cast<double>(k) * spec.phase_step();
    return out;
}

std::size_t delay_index(double delay, const QuantizationSpec &spec)
{
    return static_cast<std::size_t>(std::lround(delay / spec.tau_step));
}

std::size_t phase_index(double phase, const QuantizationSpec &spec)
{
    return static_cast<std::size_t>(std::lround(phase / spec.phase_step())) % (std::size_t{1} << spec.phase_bits);
}

// Index of the best candidate, keeping the current one unless another is strictly better.
std::size_t best_move(const std::vector<double> &values, std::size_t current)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[best])
            best = k;
    const double tol = 1e-12 * std::max(1.0, std::abs(values[current]));
    return values[best] > values[current] + tol ? best : current;
}

bool converged(double first, double later, double zeta)
{
    return std::abs(later - first) < zeta * std::abs(later);
}

} // namespace

OptimizationTrace<JptaConfig> greedy_optimize_joint(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                                    const UserScenario &scenario, const JptaConfig &init,
                                                    const QuantizationSpec &spec,
                                                    const OptimizerSettings &settings)
{
    settings.validate();
    spec.validate();
    if (!init.matches(geometry))
        throw std::invalid_argument("greedy_optimize_joint: configuration dimensions do not match the array");

    IncrementalObjective obj(geometry, grid, scenario, quantize(init, spec, grid.carrier()).config);
    const auto delays = delay_grid(spec);
    const auto phases = phase_grid(spec);
    obj.set_delay_candidates(delays);

    OptimizationTrace<JptaConfig> trace;
    trace.objective_history.push_back(obj.objective_db());
    std::vector<double> values;
    for (std::size_t sweep = 0; sweep < settings.max_sweeps; ++sweep)
    {
        const double first = obj.objective_db();
        for (std::size_t y = 0; y < geometry.n_az(); ++y)
            for (std::size_t z = 0; z < geometry.n_el(); ++z)
            {
                obj.scan_delays(y, z, values);
                const std::size_t current = delay_index(obj.config().delay(y, z), spec);
                const std::size_t pick = best_move(values, current);
                if (pick != current)
                    obj.set(y, z, obj.config().phase(y, z), delays[pick]);
            }
        for (std::size_t y = 0; y < geometry.n_az(); ++y)
            for (std::size_t z = 0; z < geometry.n_el(); ++z)
            {
                obj.scan_phases(y, z, phases, values);
                const std::size_t current = phase_index(obj.config().phase(y, z), spec);
                const std::size_t pick = best_move(values, current);
                if (pick != current)
                    obj.set(y, z, phases[pick], obj.config().delay(y, z));
            }
        obj.refresh();
        const double later = obj.objective_db();
        trace.objective_history.push_back(later);
        trace.sweeps_run = sweep + 1;
        if (converged(first, later, settings.zeta))
        {
            trace.converged = true;
            break;
        }
    }
    trace.final_config = obj.config();
    return trace;
}

OptimizationTrace<SeparatedJptaConfig> greedy_optimize_separated(const ArrayGeometry &geometry,
                                                                 const FrequencyGrid &grid,
                                                                 const UserScenario &scenario,
                                                                 const SeparatedJptaConfig &init,
                                                                 const QuantizationSpec &spec,
                                                                 const OptimizerSettings &settings)
{
    settings.validate();
    spec.validate();
    if (!init.matches(geometry))
        throw std::invalid_argument("greedy_optimize_separated: axis vector lengths do not match the array");

    SeparatedIncrementalObjective obj(geometry, grid, scenario, quantize(init, spec, grid.carrier()).config);
    const auto delays = delay_grid(spec);
    const auto phases = phase_grid(spec);
    obj.set_delay_candidates(delays);

    const std::size_t sizes[2] = {geometry.n_az(), geometry.n_el()};
    const Axis axes[2] = {Axis::az, Axis::el};
    auto phase_of = [&obj](Axis a, std::size_t k) {
        return a == Axis::az ? obj.config().phase_az[k] : obj.config().phase_el[k];
    };
    auto delay_of = [&obj](Axis a, std::size_t k) {
        return a == Axis::az ? obj.config().delay_az[k] : obj.config().delay_el[k];
    };

    OptimizationTrace<SeparatedJptaConfig> trace;
    trace.objective_history.push_back(obj.objective_db());
    std::vector<double> values;
    for (std::size_t sweep = 0; sweep < settings.max_sweeps; ++sweep)
    {
        const double first = obj.objective_db();
        for (int a = 0; a < 2; ++a)
            for (std::size_t k = 0; k < sizes[a]; ++k)
            {
                obj.scan_delays(axes[a], k, values);
                const std::size_t current = delay_index(delay_of(axes[a], k), spec);
                const std::size_t pick = best_move(values, current);
                if (pick != current)
                    obj.set(axes[a], k, phase_of(axes[a], k), delays[pick]);
            }
        for (int a = 0; a < 2; ++a)
            for (std::size_t k = 0; k < sizes[a]; ++k)
            {
                obj.scan_phases(axes[a], k, phases, values);
                const std::size_t current = phase_index(phase_of(axes[a], k), spec);
                const std::size_t pick = best_move(values, current);
                if (pick != current)
                    obj.set(axes[a], k, phases[pick], delay_of(axes[a], k));
            }
        obj.refresh();
        const double later = obj.objective_db();
        trace.objective_history.push_back(later);
        trace.sweeps_run = sweep + 1;
        if (converged(first, later, settings.zeta))
        {
            trace.converged = true;
            break;
        }
    }
    trace.final_config = obj.config();
    return trace;
}

} // namespace jpta
