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

#ifndef JPTA_EXPORT_HPP
#define JPTA_EXPORT_HPP

#include "jpta/gain.hpp"
#include "jpta/harness.hpp"
#include "jpta/quantize.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace jpta
{

enum class ExportFormat
{
    csv,
    json
};

// Column order of the metrics CSV.
inline constexpr const char *metrics_csv_header =
    "scenario_id,solver,n_users,alphas,per_user_gain_db,gl_db,wall_time_s,converged";

// Writes metrics.csv or metrics.json into `dir` (created if needed) and
// returns the file path. Gains are written in dB; failed runs carry empty gain
// fields and gl_db = nan. Throws std::runtime_error naming the path when it
// cannot be written, std::invalid_argument on an empty record list.
std::filesystem::path export_results(const std::vector<RunRecord> &records, ExportFormat format,
                                     const std::filesystem::path &dir);

// A metrics row as read back from an exported file.
struct MetricsRow
{
    std::string scenario_id;
    std::string solver;
    std::size_t n_users = 0;
    std::vector<double> alphas;
    std::vector<double> per_user_gain_db;
    double gl_db = 0.0;
    double wall_time_s = 0.0;
    bool converged = false;
};

std::vector<MetricsRow> import_metrics_csv(const std::filesystem::path &path);
std::vector<MetricsRow> import_metrics_json(const std::filesystem::path &path);

// Long-form map: theta_az_deg, theta_el_deg, max_gain_db. A per-subcarrier map
// is reduced to its maximum first. Also writes a .json mirror next to it.
void write_gain_map_csv(const GainMap &map, const std::filesystem::path &path);

// Azimuth-versus-frequency slice at one elevation: theta_az_deg, subcarrier,
// frequency_hz, gain_db. Expects a per-subcarrier map with a single elevation.
void write_slice_csv(const GainMap &map, const FrequencyGrid &grid, const std::filesystem::path &path);

// Per-element table: y, z, phase_rad, delay_ns, delay_steps (delay / tau_step).
void write_config_csv(const JptaConfig &config, const QuantizationSpec &spec, const std::filesystem::path &path);

} // namespace jpta

#endif
