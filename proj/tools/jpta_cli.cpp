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

// Command-line front end: solve, eval-map, sweep and compare.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include "jpta/config.hpp"
#include "jpta/export.hpp"
#include "jpta/gain.hpp"
#include "jpta/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace jpta;

namespace
{

constexpr int exit_usage = 1;
constexpr int exit_runtime = 2;

// Thrown for problems the user can fix in the invocation or config file.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Common
{
    std::string config_path;
    std::vector<std::string> overrides;
    int verbosity = 0;
};

ExperimentConfig load(const Common &c)
{
    try
    {
        return load_config(c.config_path, c.overrides);
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what());
    }
}

SolverKind solver_or_usage(const std::string &name)
{
    try
    {
        return parse_solver(name);
    }
    catch (const std::invalid_argument &e)
    {
        throw UsageError(e.what());
    }
}

std::vector<double> axis(double lo, double hi, double step, const char *name)
{
    if (!(step > 0.0) || !(hi > lo))
        throw UsageError(std::string(name) + ": step must be positive and the range non-empty");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (n < 2)
        throw UsageError(std::string(name) + ": the grid needs at least 2 points; reduce the step");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + static_cast<double>(i) * step;
    return out;
}

void print_metrics(const std::string &scenario_id, const MetricsReport &m)
{
    std::printf("%s  %-14s  G_l = %.4f dB  (", scenario_id.c_str(), m.solver_name.c_str(), m.log_mean_gain);
    for (std::size_t i = 0; i < m.per_user_mean_gain.size(); ++i)
        std::printf("%s%.3f", i ? ", " : "", to_db(m.per_user_mean_gain[i]));
    std::printf(" dB per user)  %.3f s\n", m.wall_time);
}

int cmd_solve(const Common &common, const std::string &solver, const std::string &out_dir)
{
    const ExperimentConfig config = load(common);
    const SolverKind kind = solver_or_usage(solver);
    const fs::path dir = out_dir.empty() ? fs::path(config.output_dir) : fs::path(out_dir);
    for (const auto &point : scenario_points(config))
    {
        const UserScenario scenario = make_scenario(config, point);
        const SolveOutcome outcome = run_solver(config, scenario, kind);
        print_metrics(point.id, outcome.metrics);
        if (outcome.clamped > 0)
            std::fprintf(stderr, "warning: %zu delays exceeded the hardware range and were clamped\n",
                         outcome.clamped);
        const fs::path table = dir / (point.id + "_" + solver + "_config.csv");
        write_config_csv(outcome.config, config.quantization, table);
        if (common.verbosity > 0)
            std::printf("wrote %s\n", table.string().c_str());
    }
    return 0;
}

struct MapOptions
{
    double az_step = 1.0;
    double el_step = 0.5;
    double az_min = -90.0, az_max = 90.0;
    double el_min = 60.0, el_max = 150.0;
    double el_slice = std::nan("");
};

int cmd_eval_map(const Common &common, const std::string &solver, const MapOptions &opt)
{
    const ExperimentConfig config = load(common);
    const SolverKind kind = solver_or_usage(solver);
    const auto az = axis(opt.az_min, opt.az_max, opt.az_step, "--az-step");
    const auto el = axis(opt.el_min, opt.el_max, opt.el_step, "--el-step");
    if (!std::isnan(opt.el_slice) && !(opt.el_slice >= 0.0 && opt.el_slice <= 180.0))
        throw UsageError("--el-slice: elevation must lie in [0, 180] degrees");

    const fs::path dir(config.output_dir);
    const auto geometry = config.geometry();
    const auto grid = config.grid();
    for (const auto &point : scenario_points(config))
    {
        const UserScenario scenario = make_scenario(config, point);
        const SolveOutcome outcome = run_solver(config, scenario, kind);
        print_metrics(point.id, outcome.metrics);

        const GainMap map = gain_map(geometry, grid, outcome.config, az, el);
        const fs::path map_path = dir / (point.id + "_" + solver + "_gain_map.csv");
        write_gain_map_csv(map, map_path);
        std::printf("wrote %s (%zu x %zu)\n", map_path.string().c_str(), az.size(), el.size());

        if (!std::isnan(opt.el_slice))
        {
            const std::vector<double> slice_el{opt.el_slice};
            const GainMap slice = gain_map(geometry, grid, outcome.config, az, slice_el, MapReduction::per_subcarrier);
            std::ostringstream name;
            name << point.id << '_' << solver << "_slice_el" << opt.el_slice << ".csv";
            write_slice_csv(slice, grid, dir / name.str());
            std::printf("wrote %s\n", (dir / name.str()).string().c_str());
        }
    }
    return 0;
}

int report_records(const std::vector<RunRecord> &records, const ExperimentConfig &config)
{
    int status = 0;
    for (const auto &r : records)
    {
        if (r.error)
        {
            std::fprintf(stderr, "%s  %s  failed: %s\n", r.scenario_id.c_str(), r.solver.c_str(), r.error->c_str());
            status = exit_runtime;
        }
        else
            print_metrics(r.scenario_id, r.metrics);
    }
    std::printf("wrote %s\n", (fs::path(config.output_dir) / "metrics.csv").string().c_str());
    return status;
}

int cmd_sweep(const Common &common)
{
    const ExperimentConfig config = load(common);
    return report_records(run_experiment(config), config);
}

int cmd_compare(const Common &common, const std::string &solver_list)
{
    ExperimentConfig config = load(common);
    config.solvers.clear();
    std::stringstream in(solver_list);
    std::string name;
    while (std::getline(in, name, ','))
    {
        if (name.empty())
            continue;
        solver_or_usage(name);
        config.solvers.push_back(name);
    }
    if (config.solvers.size() < 2)
        throw UsageError("--solvers: give at least two comma-separated solver names");

    const auto records = run_experiment(config);
    const int status = report_records(records, config);

    std::map<std::string, std::map<std::string, double>> gl;
    for (const auto &r : records)
        gl[r.scenario_id][r.solver] = r.error ? std::nan("") : r.metrics.log_mean_gain;

    std::printf("\nG_l [dB]\n%-8s", "scenario");
    for (const auto &s : config.solvers)
        std::printf("  %14s", s.c_str());
    std::printf("\n");
    for (const auto &[id, row] : gl)
    {
        std::printf("%-8s", id.c_str());
        for (const auto &s : config.solvers)
            std::printf("  %14.4f", row.at(s));
        std::printf("\n");
    }

    std::printf("\npairwise deltas [dB]\n");
    for (std::size_t a = 0; a < config.solvers.size(); ++a)
        for (std::size_t b = a + 1; b < config.solvers.size(); ++b)
        {
            const auto &sa = config.solvers[a];
            const auto &sb = config.solvers[b];
            std::printf("%s - %s:", sa.c_str(), sb.c_str());
            for (const auto &[id, row] : gl)
                std::printf("  %s %+.4f", id.c_str(), row.at(sa) - row.at(sb));
            std::printf("\n");
        }
    return status;
}

void add_common(CLI::App *cmd, Common &common)
{
    cmd->add_option("--config", common.config_path, "Experiment config file (.json or .toml)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", common.overrides, "Override a config key, e.g. --set users.count=4 (repeatable)")
        ->take_all()
        ->allow_extra_args(false);
    cmd->add_flag("-v,--verbose", common.verbosity, "More output");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Frequency-dependent 3D beam design for joint phase-time arrays"};
    app.require_subcommand(1);

    Common common;
    std::string solver;
    std::string out_dir;
    std::string solver_list;
    MapOptions map_opt;

    auto *solve = app.add_subcommand("solve", "Run one solver and write the per-element phase/delay table");
    add_common(solve, common);
    solve->add_option("--solver", solver, "Solver name")->required();
    solve->add_option("--out", out_dir, "Output directory (defaults to output.dir)");

    auto *eval_map = app.add_subcommand("eval-map", "Run one solver and write its gain map");
    add_common(eval_map, common);
    eval_map->add_option("--solver", solver, "Solver name")->required();
    eval_map->add_option("--az-step", map_opt.az_step, "Azimuth resolution in degrees")->capture_default_str();
    eval_map->add_option("--el-step", map_opt.el_step, "Elevation resolution in degrees")->capture_default_str();
    eval_map->add_option("--az-min", map_opt.az_min, "First azimuth in degrees")->capture_default_str();
    eval_map->add_option("--az-max", map_opt.az_max, "Last azimuth in degrees")->capture_default_str();
    eval_map->add_option("--el-min", map_opt.el_min, "First elevation in degrees")->capture_default_str();
    eval_map->add_option("--el-max", map_opt.el_max, "Last elevation in degrees")->capture_default_str();
    eval_map->add_option("--el-slice", map_opt.el_slice,
                         "Also write an azimuth-versus-subcarrier slice at this elevation");

    auto *sweep = app.add_subcommand("sweep", "Run every configured solver on every scenario point");
    add_common(sweep, common);

    auto *compare = app.add_subcommand("compare", "Run several solvers and print G_l with pairwise deltas");
    add_common(compare, common);
    compare->add_option("--solvers", solver_list, "Comma-separated solver names")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try
    {
        if (*solve)
            return cmd_solve(common, solver, out_dir);
        if (*eval_map)
            return cmd_eval_map(common, solver, map_opt);
        if (*sweep)
            return cmd_sweep(common);
        return cmd_compare(common, solver_list);
    }
    catch (const UsageError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "failed: %s\n", e.what());
        return exit_runtime;
    }
}
