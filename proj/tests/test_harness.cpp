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

#include "jpta/config.hpp"
#include "jpta/export.hpp"
#include "jpta/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace jpta;

namespace
{

// Fresh scratch directory, removed again on scope exit.
struct ScratchDir
{
    fs::path path;
    explicit ScratchDir(const std::string &name) : path(fs::temp_directory_path() / ("jpta_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path &p, const std::string &text)
{
    std::ofstream(p) << text;
    return p;
}

// Small array and grid so whole experiments run in milliseconds.
ExperimentConfig small_config(const fs::path &out)
{
    ExperimentConfig c;
    c.n_az = 4;
    c.n_el = 6;
    c.delta_f = 2e6;
    c.m_count = 61;
    c.output_dir = out.string();
    return c;
}

} // namespace

TEST_CASE("reference defaults")
{
    const ExperimentConfig c;
    CHECK(c.f_c == 28e9);
    CHECK(c.delta_f == 120e3);
    CHECK(c.m_count == 793);
    CHECK(c.n_az == 16);
    CHECK(c.n_el == 24);
    CHECK(c.quantization.tau_step == 2.5e-9);
    CHECK(c.quantization.tau_max == 200e-9);
    CHECK(c.quantization.phase_bits == 6);
    CHECK(c.optimizer.zeta == 1e-3);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("solver names")
{
    for (const auto &name : known_solvers())
        CHECK(solver_name(parse_solver(name)) == name);
    CHECK(is_separated(parse_solver("sep-minimax")));
    CHECK_FALSE(is_separated(parse_solver("gd-joint")));
    try
    {
        parse_solver("joint-lsq");
        FAIL("expected an exception");
    }
    catch (const std::invalid_argument &e)
    {
        CHECK(std::string(e.what()).find("joint-minimax") != std::string::npos);
    }
}

TEST_CASE("user placement and scenario points")
{
    const auto one = place_users(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].az_deg() == 0.0);
    CHECK(one[0].el_deg() == 105.0);
    const auto three = place_users(3);
    CHECK(three[0].az_deg() == -60.0);
    CHECK(three[0].el_deg() == 90.0);
    CHECK(three[1].az_deg() == doctest::Approx(0.0));
    CHECK(three[1].el_deg() == doctest::Approx(105.0));
    CHECK(three[2].az_deg() == 60.0);
    CHECK(three[2].el_deg() == 120.0);
    CHECK_THROWS_AS(place_users(0), std::invalid_argument);

    ExperimentConfig c;
    c.n_users = 3;
    auto points = scenario_points(c);
    REQUIRE(points.size() == 1);
    CHECK(points[0].id == "s000");
    CHECK(points[0].alphas.size() == 3);

    c.sweep_users = {1, 2, 4, 8};
    points = scenario_points(c);
    REQUIRE(points.size() == 4);
    CHECK(points[3].id == "s003");
    CHECK(points[3].directions.size() == 8);

    c.sweep_users.clear();
    c.sweep_alphas = {{0.2, 0.8}, {0.5, 0.5}};
    points = scenario_points(c);
    REQUIRE(points.size() == 2);
    CHECK(points[0].alphas == std::vector<double>{0.2, 0.8});
    const auto s = make_scenario(c, points[0]);
    CHECK(s.subbands()[0].size() + s.subbands()[1].size() == 793);

    ScenarioPoint bad{"s009", place_users(2), {1.0}};
    CHECK_THROWS_AS(make_scenario(c, bad), std::invalid_argument);
}

TEST_CASE("TOML and JSON configs")
{
    ScratchDir dir("config");
    const auto toml = write_file(dir.path / "a.toml", R"(# comment
solvers = ["joint-ls", "sep-minimax"]   # trailing comment

[array]
n_az = 4
n_el = 6

[grid]
m_count = 61
delta_f = 2e6

[users]
directions = [[-30.0, 95.0], { az = 20, el = 110 }]
alphas = [0.25, 0.75]
partition = "per-user-floor"

[quantization]
phase_bits = 4
analytic = false

[optimizer]
zeta = 1e-6
seed = 7

[output]
dir = 'literal/path'
)");
    const auto c = load_config(toml.string());
    CHECK(c.n_az == 4);
    CHECK(c.m_count == 61);
    CHECK(c.delta_f == 2e6);
    REQUIRE(c.directions.size() == 2);
    CHECK(c.directions[1].az_deg() == 20.0);
    CHECK(c.alphas == std::vector<double>{0.25, 0.75});
    CHECK(c.partition == PartitionRule::per_user_floor);
    CHECK(c.solvers == std::vector<std::string>{"joint-ls", "sep-minimax"});
    CHECK(c.quantization.phase_bits == 4);
    CHECK_FALSE(c.quantize_analytic);
    CHECK(c.optimizer.zeta == 1e-6);
    CHECK(c.output_dir == "literal/path");

    // The same settings through JSON give the same digest.
    const auto json_path = write_file(dir.path / "a.json", to_json(c).dump(2));
    const auto from_json = load_config(json_path.string());
    CHECK(config_digest(from_json) == config_digest(c));

    SUBCASE("overrides")
    {
        const auto o = load_config(toml.string(), {"users.alphas=[0.5,0.5]", "array.n_el=8", "solvers=gd-joint",
                                                   "output.dir=elsewhere"});
        CHECK(o.alphas == std::vector<double>{0.5, 0.5});
        CHECK(o.n_el == 8);
        CHECK(o.solvers == std::vector<std::string>{"gd-joint"});
        CHECK(o.output_dir == "elsewhere");
        CHECK(config_digest(o) != config_digest(c));
        CHECK_THROWS_AS(load_config(toml.string(), {"no_equals_sign"}), std::invalid_argument);
    }

    SUBCASE("digest ignores output location and workers")
    {
        auto moved = c;
        moved.output_dir = "other";
        moved.workers = 4;
        CHECK(config_digest(moved) == config_digest(c));
        auto changed = c;
        changed.optimizer.seed = 8;
        CHECK(config_digest(changed) != config_digest(c));
    }

    SUBCASE("rejections name the key")
    {
        auto expect_error = [&](const std::string &text, const std::string &needle) {
            const auto p = write_file(dir.path / "bad.toml", text);
            try
            {
                load_config(p.string());
                FAIL("expected an exception for: " << text);
            }
            catch (const std::invalid_argument &e)
            {
                CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
            }
        };
        expect_error("[array]\nn_azz = 4\n", "array.n_azz");
        expect_error("[grid]\nm_count = -3\n", "grid.m_count");
        expect_error("solvers = [\"joint-lq\"]\n", "joint-lq");
        expect_error("[users]\npartition = \"round\"\n", "users.partition");
        expect_error("[quantization]\ntau_step = 0.0\n", "quantization");
        expect_error("[array\nn_az = 4\n", "line 1");
        expect_error("[[runs]]\nx = 1\n", "line 1");
    }

    CHECK_THROWS_AS(load_config((dir.path / "missing.toml").string()), std::runtime_error);
}

TEST_CASE("experiment cardinality, export round trip and reproducibility")
{
    ScratchDir dir("experiment");
    auto c = small_config(dir.path / "run1");
    c.n_users = 2;
    c.solvers = {"joint-ls", "joint-minimax", "sep-ls", "sep-minimax"};
    for (int k = 1; k <= 10; ++k)
        c.sweep_alphas.push_back({0.05 * k, 1.0 - 0.05 * k});
    c.workers = 3;

    const auto records = run_experiment(c);
    REQUIRE(records.size() == 40);
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto &r : records)
    {
        keys.emplace(r.scenario_id, r.solver);
        CHECK_FALSE(r.error.has_value());
        CHECK(r.metrics.per_user_mean_gain.size() == 2);
        CHECK(r.subband_sizes.size() == 2);
        CHECK(r.subband_sizes[0] + r.subband_sizes[1] == 61);
        CHECK(std::isfinite(r.metrics.log_mean_gain));
        CHECK(r.metrics.wall_time >= 0.0);
        CHECK(r.digest == records.front().digest);
    }
    CHECK(keys.size() == 40);
    CHECK(records.front().scenario_id == "s000");
    CHECK(records.front().solver == "joint-ls");

    const auto csv_rows = import_metrics_csv(dir.path / "run1" / "metrics.csv");
    const auto json_rows = import_metrics_json(dir.path / "run1" / "metrics.json");
    REQUIRE(csv_rows.size() == 40);
    REQUIRE(json_rows.size() == 40);
    {
        std::ifstream in(dir.path / "run1" / "metrics.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == metrics_csv_header);
    }
    for (std::size_t i = 0; i < 40; ++i)
    {
        const auto &r = records[i];
        for (const auto *row : {&csv_rows[i], &json_rows[i]})
        {
            CHECK(row->scenario_id == r.scenario_id);
            CHECK(row->solver == r.solver);
            CHECK(row->n_users == 2);
            REQUIRE(row->alphas.size() == 2);
            CHECK(std::abs(row->alphas[0] - r.alphas[0]) < 1e-9);
            CHECK(std::abs(row->gl_db - r.metrics.log_mean_gain) < 1e-9);
            REQUIRE(row->per_user_gain_db.size() == 2);
            CHECK(std::abs(row->per_user_gain_db[1] - to_db(r.metrics.per_user_mean_gain[1])) < 1e-9);
            CHECK(std::abs(row->wall_time_s - r.metrics.wall_time) < 1e-9);
            CHECK(row->converged == r.converged);
        }
    }

    // A second run reproduces every column except wall time.
    auto again = c;
    again.output_dir = (dir.path / "run2").string();
    again.workers = 1;
    const auto rows2 = (run_experiment(again), import_metrics_csv(dir.path / "run2" / "metrics.csv"));
    REQUIRE(rows2.size() == csv_rows.size());
    for (std::size_t i = 0; i < rows2.size(); ++i)
    {
        CHECK(rows2[i].scenario_id == csv_rows[i].scenario_id);
        CHECK(rows2[i].solver == csv_rows[i].solver);
        CHECK(rows2[i].gl_db == csv_rows[i].gl_db);
        CHECK(rows2[i].per_user_gain_db == csv_rows[i].per_user_gain_db);
        CHECK(rows2[i].converged == csv_rows[i].converged);
    }

    // Comparing solvers: joint designs never lose to their separated counterparts here.
    for (std::size_t i = 0; i < records.size(); i += 4)
    {
        CHECK(records[i].solver == "joint-ls");
        CHECK(records[i + 2].solver == "sep-ls");
        CHECK(records[i].metrics.log_mean_gain > records[i + 2].metrics.log_mean_gain);
        CHECK(records[i + 1].metrics.log_mean_gain > records[i + 3].metrics.log_mean_gain);
    }
}

TEST_CASE("iterative solvers through the harness")
{
    ScratchDir dir("iterative");
    auto c = small_config(dir.path);
    c.n_users = 2;
    c.solvers = {"greedy-joint", "gd-joint", "greedy-sep", "gd-sep"};
    const auto records = run_experiment(c, true);
    REQUIRE(records.size() == 4);
    for (const auto &r : records)
    {
        CHECK_FALSE(r.error.has_value());
        REQUIRE(r.config.has_value());
        CHECK(r.config->phase.size() == 24);
    }
}

TEST_CASE("failed runs are recorded without stopping the rest")
{
    ScratchDir dir("errors");
    auto c = small_config(dir.path);
    c.n_users = 2;
    c.solvers = {"joint-ls", "sep-ls"};
    c.sweep_alphas = {{0.5, 0.5}, {0.6, 0.6}, {0.3, 0.7}};
    const auto records = run_experiment(c);
    REQUIRE(records.size() == 6);
    for (const auto &r : records)
    {
        if (r.scenario_id == "s001")
        {
            REQUIRE(r.error.has_value());
            CHECK(r.error->find("sum") != std::string::npos);
        }
        else
            CHECK_FALSE(r.error.has_value());
    }
    const auto rows = import_metrics_csv(dir.path / "metrics.csv");
    REQUIRE(rows.size() == 6);
    CHECK(std::isnan(rows[2].gl_db));
    CHECK(rows[2].per_user_gain_db.empty());
    CHECK(std::isfinite(rows[4].gl_db));
}

TEST_CASE("output locations")
{
    ScratchDir dir("output");
    const auto cfg = write_file(dir.path / "c.toml", "[output]\ndir = \"from_file\"\n");

    ::setenv(output_dir_env, (dir.path / "from_env").string().c_str(), 1);
    CHECK(load_config(cfg.string()).output_dir == (dir.path / "from_env").string());
    CHECK(load_config(cfg.string(), {"output.dir=flag"}).output_dir == (dir.path / "from_env").string());
    ::setenv(output_dir_env, "", 1);
    CHECK(load_config(cfg.string()).output_dir == "from_file");
    ::unsetenv(output_dir_env);

    // A regular file where the output directory should be.
    const auto blocker = write_file(dir.path / "blocker", "x");
    auto c = small_config(blocker / "sub");
    try
    {
        run_experiment(c);
        FAIL("expected an exception");
    }
    catch (const std::runtime_error &e)
    {
        CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
    CHECK_THROWS_AS(export_results({}, ExportFormat::csv, dir.path), std::invalid_argument);
}

TEST_CASE("config and map tables")
{
    ScratchDir dir("tables");
    const ArrayGeometry a(2, 3);
    auto cfg = JptaConfig::zeros(a);
    const QuantizationSpec q;
    cfg.delay(1, 2) = 7 * q.tau_step;
    cfg.phase(0, 1) = 3 * q.phase_step();
    write_config_csv(cfg, q, dir.path / "cfg.csv");
    std::ifstream in(dir.path / "cfg.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "y,z,phase_rad,delay_ns,delay_steps");
    int rows = 0;
    bool saw_delay = false;
    while (std::getline(in, line))
    {
        ++rows;
        if (line.rfind("1,2,", 0) == 0)
        {
            saw_delay = true;
            CHECK(line.substr(line.rfind(',') + 1) == "7");
        }
    }
    CHECK(rows == 6);
    CHECK(saw_delay);

    const FrequencyGrid g(28e9, 1e6, 3);
    const std::vector<double> az2{-10.0, 10.0}, az3{-10.0, 0.0, 10.0}, el{90.0};
    const auto map = gain_map(a, g, cfg, az2, el);
    write_gain_map_csv(map, dir.path / "map.csv");
    CHECK(fs::exists(dir.path / "map.json"));
    std::ifstream m(dir.path / "map.csv");
    int lines = 0;
    while (std::getline(m, line))
        ++lines;
    CHECK(lines == 3);

    const auto slice = gain_map(a, g, cfg, az3, el, MapReduction::per_subcarrier);
    write_slice_csv(slice, g, dir.path / "slice.csv");
    std::ifstream s(dir.path / "slice.csv");
    lines = 0;
    while (std::getline(s, line))
        ++lines;
    CHECK(lines == 1 + 3 * 3);
    CHECK_THROWS(write_slice_csv(map, g, dir.path / "bad.csv"));
}
