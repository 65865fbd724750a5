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

#include "jpta/harness.hpp"

#include "jpta/analytic.hpp"
#include "jpta/export.hpp"
#include "jpta/gain.hpp"
#include "jpta/objective.hpp"
#include "jpta/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>
#include <thread>

namespace jpta
{

namespace
{

constexpr SolverKind all_kinds[] = {SolverKind::joint_ls,     SolverKind::joint_minimax, SolverKind::sep_ls,
                                    SolverKind::sep_minimax,  SolverKind::greedy_joint,  SolverKind::greedy_sep,
                                    SolverKind::gd_joint,     SolverKind::gd_sep};

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

JptaConfig expand_wrapped(const SeparatedJptaConfig &config)
{
    JptaConfig out = config.expand();
    for (double &p : out.phase.values())
        p = wrap_phase(p);
    return out;
}

} // namespace

SolverKind parse_solver(const std::string &name)
{
    for (SolverKind k : all_kinds)
        if (solver_name(k) == name)
            return k;
    std::string list;
    for (const auto &k : known_solvers())
        list += (list.empty() ? "" : ", ") + k;
    throw std::invalid_argument("unknown solver '" + name + "' (valid: " + list + ")");
}

std::string solver_name(SolverKind kind)
{
    return known_solvers()[static_cast<std::size_t>(kind)];
}

bool is_separated(SolverKind kind)
{
    return kind == SolverKind::sep_ls || kind == SolverKind::sep_minimax || kind == SolverKind::greedy_sep ||
           kind == SolverKind::gd_sep;
}

std::vector<Direction> place_users(std::size_t n_users)
{
    if (n_users == 0)
        throw std::invalid_argument("place_users: at least one user is required");
    if (n_users == 1)
        return {Direction(0.0, 105.0)};
    std::vector<Direction> out;
    const double last = static_cast<double>(n_users - 1);
    for (std::size_t i = 0; i < n_users; ++i)
    {
        const double t = static_cast<double>(i) / last;
        out.emplace_back(-60.0 + 120.0 * t, 90.0 + 30.0 * t);
    }
    return out;
}

std::vector<ScenarioPoint> scenario_points(const ExperimentConfig &config)
{
    auto id = [](std::size_t i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "s%03zu", i);
        return std::string(buf);
    };
    std::vector<ScenarioPoint> out;
    if (!config.sweep_alphas.empty())
    {
        for (std::size_t i = 0; i < config.sweep_alphas.size(); ++i)
        {
            const auto &alphas = config.sweep_alphas[i];
            out.push_back({id(i), config.directions.empty() ? place_users(alphas.size()) : config.directions, alphas});
        }
    }
    else if (!config.sweep_users.empty())
    {
        for (std::size_t i = 0; i < config.sweep_users.size(); ++i)
        {
            const std::size_t n = config.sweep_users[i];
            out.push_back({id(i), place_users(n), equal_alphas(n)});
        }
    }
    else
    {
        auto dirs = config.directions.empty() ? place_users(config.n_users) : config.directions;
        auto alphas = config.alphas.empty() ? equal_alphas(dirs.size()) : config.alphas;
        out.push_back({id(0), std::move(dirs), std::move(alphas)});
    }
    return out;
}

UserScenario make_scenario(const ExperimentConfig &config, const ScenarioPoint &point)
{
    if (point.alphas.size() != point.directions.size())
        throw std::invalid_argument("scenario " + point.id + ": " + std::to_string(point.alphas.size()) +
                                    " alphas for " + std::to_string(point.directions.size()) + " users");
    return UserScenario(point.directions, point.alphas, config.m_count, config.partition);
}

SolveOutcome run_solver(const ExperimentConfig &config, const UserScenario &scenario, SolverKind kind)
{
    const ArrayGeometry geometry = config.geometry();
    const FrequencyGrid grid = config.grid();
    const QuantizationSpec &spec = config.quantization;
    const double carrier = grid.carrier();

    SolveOutcome out;
    std::vector<double> gains;
    const auto start = std::chrono::steady_clock::now();
    auto stop_clock = [&] {
        out.metrics.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    switch (kind)
    {
    case SolverKind::joint_ls:
    case SolverKind::joint_minimax: {
        JptaConfig c = joint_analytic(geometry, grid, scenario,
                                      kind == SolverKind::joint_ls ? Criterion::ls : Criterion::minimax);
        if (config.quantize_analytic)
        {
            auto q = quantize(c, spec, carrier);
            out.clamped = q.clamped;
            c = std::move(q.config);
        }
        stop_clock();
        gains = user_mean_gains(geometry, grid, c, scenario);
        out.config = std::move(c);
        break;
    }
    case SolverKind::sep_ls:
    case SolverKind::sep_minimax: {
        SeparatedJptaConfig c = separated_analytic(geometry, grid, scenario,
                                                   kind == SolverKind::sep_ls ? Criterion::ls : Criterion::minimax);
        if (config.quantize_analytic)
        {
            auto q = quantize(c, spec, carrier);
            out.clamped = q.clamped;
            c = std::move(q.config);
        }
        stop_clock();
        gains = user_mean_gains(geometry, grid, c, scenario);
        out.config = expand_wrapped(c);
        break;
    }
    case SolverKind::greedy_joint:
    case SolverKind::gd_joint: {
        const JptaConfig init = joint_analytic(geometry, grid, scenario, Criterion::ls);
        auto trace = kind == SolverKind::greedy_joint
                         ? greedy_optimize_joint(geometry, grid, scenario, init, spec, config.optimizer)
                         : gd_optimize(geometry, grid, scenario, init, spec, config.optimizer);
        stop_clock();
        out.converged = trace.converged;
        out.iterations = trace.sweeps_run;
        gains = user_mean_gains(geometry, grid, trace.final_config, scenario);
        out.config = std::move(trace.final_config);
        break;
    }
    case SolverKind::greedy_sep:
    case SolverKind::gd_sep: {
        const SeparatedJptaConfig init = separated_analytic(geometry, grid, scenario, Criterion::ls);
        auto trace = kind == SolverKind::greedy_sep
                         ? greedy_optimize_separated(geometry, grid, scenario, init, spec, config.optimizer)
                         : gd_optimize(geometry, grid, scenario, init, spec, config.optimizer);
        stop_clock();
        out.converged = trace.converged;
        out.iterations = trace.sweeps_run;
        gains = user_mean_gains(geometry, grid, trace.final_config, scenario);
        out.config = expand_wrapped(trace.final_config);
        break;
    }
    }

    out.metrics.per_user_mean_gain = gains;
    out.metrics.log_mean_gain = log_mean_gain(gains);
    out.metrics.solver_name = solver_name(kind);
    return out;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig &config, bool keep_configs)
{
    config.validate();
    const auto points = scenario_points(config);
    const std::string digest = config_digest(config);

    struct Job
    {
        std::size_t point;
        std::string solver;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < points.size(); ++p)
        for (const auto &s : config.solvers)
            jobs.push_back({p, s});

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++)
        {
            const auto &point = points[jobs[j].point];
            RunRecord &r = records[j];
            r.scenario_id = point.id;
            r.digest = digest;
            r.solver = jobs[j].solver;
            r.alphas = point.alphas;
            try
            {
                const UserScenario scenario = make_scenario(config, point);
                for (const auto &band : scenario.subbands())
                    r.subband_sizes.push_back(band.size());
                SolveOutcome outcome = run_solver(config, scenario, parse_solver(jobs[j].solver));
                r.metrics = std::move(outcome.metrics);
                r.converged = outcome.converged;
                if (keep_configs)
                    r.config = std::move(outcome.config);
            }
            catch (const std::exception &e)
            {
                r.error = e.what();
                r.metrics = MetricsReport{};
                r.metrics.solver_name = jobs[j].solver;
                r.converged = false;
            }
            r.timestamp = utc_timestamp();
        }
    };

    const std::size_t n_threads = std::min(config.workers, jobs.size());
    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }

    std::stable_sort(records.begin(), records.end(), [](const RunRecord &a, const RunRecord &b) {
        return a.scenario_id != b.scenario_id ? a.scenario_id < b.scenario_id : a.solver < b.solver;
    });

    export_results(records, ExportFormat::csv, config.output_dir);
    export_results(records, ExportFormat::json, config.output_dir);
    return records;
}

} // namespace jpta
