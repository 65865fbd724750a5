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

#include "jpta/export.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jpta
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string joined(const std::vector<double> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? ";" : "") + fmt(values[i]);
    return out;
}

std::vector<double> split_numbers(const std::string &field)
{
    std::vector<double> out;
    if (field.empty())
        return out;
    std::stringstream in(field);
    std::string item;
    while (std::getline(in, item, ';'))
        out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

std::vector<double> gains_db(const MetricsReport &m)
{
    std::vector<double> out;
    for (double g : m.per_user_mean_gain)
        out.push_back(to_db(g));
    return out;
}

std::ofstream open_for_write(const fs::path &path)
{
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write output file: " + path.string());
    return out;
}

void finish(std::ofstream &out, const fs::path &path)
{
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing output file: " + path.string());
}

double json_number(const json &node)
{
    return node.is_number() ? node.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

fs::path export_results(const std::vector<RunRecord> &records, ExportFormat format, const fs::path &dir)
{
    if (records.empty())
        throw std::invalid_argument("export_results: no records to export");
    const fs::path path = dir / (format == ExportFormat::csv ? "metrics.csv" : "metrics.json");
    std::ofstream out = open_for_write(path);

    if (format == ExportFormat::csv)
    {
        out << metrics_csv_header << '\n';
        for (const auto &r : records)
        {
            const bool failed = r.error.has_value();
            out << r.scenario_id << ',' << r.solver << ',' << r.alphas.size() << ',' << joined(r.alphas) << ','
                << (failed ? "" : joined(gains_db(r.metrics))) << ','
                << (failed ? "nan" : fmt(r.metrics.log_mean_gain)) << ',' << fmt(r.metrics.wall_time) << ','
                << (r.converged ? "true" : "false") << '\n';
        }
    }
    else
    {
        json rows = json::array();
        for (const auto &r : records)
        {
            json row{{"scenario_id", r.scenario_id},
                     {"solver", r.solver},
                     {"n_users", r.alphas.size()},
                     {"alphas", r.alphas},
                     {"per_user_gain_db", r.error ? std::vector<double>{} : gains_db(r.metrics)},
                     {"gl_db", r.error ? json(nullptr) : json(r.metrics.log_mean_gain)},
                     {"wall_time_s", r.metrics.wall_time},
                     {"converged", r.converged},
                     {"digest", r.digest},
                     {"subband_sizes", r.subband_sizes},
                     {"timestamp", r.timestamp}};
            if (r.error)
                row["error"] = *r.error;
            if (r.gain_map_file)
                row["gain_map_file"] = *r.gain_map_file;
            rows.push_back(std::move(row));
        }
        out << rows.dump(2) << '\n';
    }
    finish(out, path);
    return path;
}

std::vector<MetricsRow> import_metrics_csv(const fs::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read metrics file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != metrics_csv_header)
        throw std::runtime_error("unexpected metrics header in " + path.string());
    std::vector<MetricsRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (!line.empty() && line.back() == ',')
            f.emplace_back();
        if (f.size() != 8)
            throw std::runtime_error("malformed metrics row in " + path.string() + ": " + line);
        MetricsRow r;
        r.scenario_id = f[0];
        r.solver = f[1];
        r.n_users = static_cast<std::size_t>(std::stoul(f[2]));
        r.alphas = split_numbers(f[3]);
        r.per_user_gain_db = split_numbers(f[4]);
        r.gl_db = std::strtod(f[5].c_str(), nullptr);
        r.wall_time_s = std::strtod(f[6].c_str(), nullptr);
        r.converged = f[7] == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<MetricsRow> import_metrics_json(const fs::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read metrics file: " + path.string());
    const json doc = json::parse(in);
    std::vector<MetricsRow> rows;
    for (const auto &j : doc)
    {
        MetricsRow r;
        r.scenario_id = j.at("scenario_id").get<std::string>();
        r.solver = j.at("solver").get<std::string>();
        r.n_users = j.at("n_users").get<std::size_t>();
        r.alphas = j.at("alphas").get<std::vector<double>>();
        for (const auto &g : j.at("per_user_gain_db"))
            r.per_user_gain_db.push_back(json_number(g));
        r.gl_db = json_number(j.at("gl_db"));
        r.wall_time_s = json_number(j.at("wall_time_s"));
        r.converged = j.at("converged").get<bool>();
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_gain_map_csv(const GainMap &map, const fs::path &path)
{
    std::ofstream out = open_for_write(path);
    json rows = json::array();
    out << "theta_az_deg,theta_el_deg,max_gain_db\n";
    for (std::size_t a = 0; a < map.az_deg.size(); ++a)
        for (std::size_t e = 0; e < map.el_deg.size(); ++e)
        {
            double peak = 0.0;
            for (std::size_t m = 0; m < map.depth; ++m)
                peak = std::max(peak, map.at(a, e, m));
            const double db = to_db(peak);
            out << fmt(map.az_deg[a]) << ',' << fmt(map.el_deg[e]) << ',' << fmt(db) << '\n';
            rows.push_back({{"theta_az_deg", map.az_deg[a]},
                            {"theta_el_deg", map.el_deg[e]},
                            {"max_gain_db", std::isfinite(db) ? json(db) : json(nullptr)}});
        }
    finish(out, path);

    fs::path mirror = path;
    mirror.replace_extension(".json");
    std::ofstream js = open_for_write(mirror);
    js << rows.dump(2) << '\n';
    finish(js, mirror);
}

void write_slice_csv(const GainMap &map, const FrequencyGrid &grid, const fs::path &path)
{
    if (map.reduction != MapReduction::per_subcarrier || map.el_deg.size() != 1)
        throw std::invalid_argument("write_slice_csv: expects a per-subcarrier map at a single elevation");
    std::ofstream out = open_for_write(path);
    out << "theta_az_deg,subcarrier,frequency_hz,gain_db\n";
    for (std::size_t a = 0; a < map.az_deg.size(); ++a)
        for (std::size_t m = 0; m < map.depth; ++m)
            out << fmt(map.az_deg[a]) << ',' << m << ',' << fmt(grid.frequency(m)) << ','
                << fmt(to_db(map.at(a, 0, m))) << '\n';
    finish(out, path);
}

void write_config_csv(const JptaConfig &config, const QuantizationSpec &spec, const fs::path &path)
{
    std::ofstream out = open_for_write(path);
    out << "y,z,phase_rad,delay_ns,delay_steps\n";
    for (std::size_t y = 0; y < config.phase.rows(); ++y)
        for (std::size_t z = 0; z < config.phase.cols(); ++z)
        {
            const double d = config.delay(y, z);
            double steps = d / spec.tau_step;
            if (std::abs(steps - std::round(steps)) < 1e-9)
                steps = std::round(steps);
            out << y << ',' << z << ',' << fmt(config.phase(y, z)) << ',' << fmt(d * 1e9) << ','
                << fmt(steps) << '\n';
        }
    finish(out, path);
}

} // namespace jpta
