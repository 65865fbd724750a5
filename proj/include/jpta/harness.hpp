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

#ifndef JPTA_HARNESS_HPP
#define JPTA_HARNESS_HPP

#include "jpta/config.hpp"
#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jpta
{

enum class SolverKind
{
    joint_ls,
    joint_minimax,
    sep_ls,
    sep_minimax,
    greedy_joint,
    greedy_sep,
    gd_joint,
    gd_sep
};

// Throws std::invalid_argument listing the valid names on a typo.
SolverKind parse_solver(const std::string &name);
std::string solver_name(SolverKind kind);
bool is_separated(SolverKind kind);

// Users spread evenly over the 120 x 30 degree sector, from (-60, 90) to
// (60, 120). A single user sits at the sector center (0, 105).
std::vector<Direction> place_users(std::size_t n_users);

// One fully resolved scenario point of an experiment.
struct ScenarioPoint
{
    std::string id;
    std::vector<Direction> directions;
    std::vector<double> alphas;
};

// Expands the user settings and sweep axis into scenario points with ids s000, s001, ...
std::vector<ScenarioPoint> scenario_points(const ExperimentConfig &config);

UserScenario make_scenario(const ExperimentConfig &config, const ScenarioPoint &point);

struct SolveOutcome
{
    // Separated results are expanded to per-element settings.
    JptaConfig config;
    MetricsReport metrics;
    bool converged = true;
    std::size_t iterations = 0;
    // Delays clamped to the hardware range during quantization.
    std::size_t clamped = 0;
};

// Runs one solver on one scenario. Analytic solvers are quantized when
// config.quantize_analytic is set; iterative solvers always are. The wall time
// covers initialization, optimization and quantization.
SolveOutcome run_solver(const ExperimentConfig &config, const UserScenario &scenario, SolverKind kind);

struct RunRecord
{
    std::string scenario_id;
    std::string digest;
    std::string solver;
    std::vector<double> alphas;
    std::vector<std::size_t> subband_sizes;
    MetricsReport metrics;
    bool converged = false;
    // Set when the run failed; metrics are then empty.
    std::optional<std::string> error;
    std::optional<std::string> gain_map_file;
    std::string timestamp;
    std::optional<JptaConfig> config;
};

// One record per scenario point and solver, sorted by scenario id then solver
// name. Runs use up to config.workers threads; a failing run is recorded with
// its error and does not stop the others. Records are written to
// config.output_dir (metrics.csv and metrics.json) before returning.
std::vector<RunRecord> run_experiment(const ExperimentConfig &config, bool keep_configs = false);

} // namespace jpta

#endif
