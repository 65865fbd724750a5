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

#ifndef JPTA_CONFIG_HPP
#define JPTA_CONFIG_HPP

#include "jpta/optimize.hpp"
#include "jpta/quantize.hpp"
#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace jpta
{

// Solver labels accepted in configs and on the command line.
const std::vector<std::string> &known_solvers();

// Resolved experiment description. Defaults are the 28 GHz, 16 x 24 element,
// 793-subcarrier reference setup with 2.5 ns / 200 ns delays and 6-bit phases.
struct ExperimentConfig
{
    std::size_t n_az = 16;
    std::size_t n_el = 24;
    double f_c = 28e9;
    double delta_f = 120e3;
    std::size_t m_count = 793;

    // Users come from `directions` when it is non-empty, otherwise from the
    // placement rule with `n_users` users. Empty `alphas` means equal shares.
    std::size_t n_users = 1;
    std::vector<Direction> directions;
    std::vector<double> alphas;
    PartitionRule partition = PartitionRule::cumulative_floor;

    std::vector<std::string> solvers{"joint-ls"};
    QuantizationSpec quantization;
    // When false, analytic solvers report unquantized configurations.
    bool quantize_analytic = true;
    OptimizerSettings optimizer;

    // Optional sweep: one scenario per alpha vector, or one per user count.
    std::vector<std::vector<double>> sweep_alphas;
    std::vector<std::size_t> sweep_users;

    std::string output_dir = "results";
    std::size_t workers = 1;

    ArrayGeometry geometry() const { return {n_az, n_el}; }
    FrequencyGrid grid() const { return {f_c, delta_f, m_count}; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Environment variable that overrides output.dir when set and non-empty.
inline constexpr const char *output_dir_env = "JPTA_OUTPUT_DIR";

nlohmann::json to_json(const ExperimentConfig &config);

// Builds a config from a nested key tree. Missing keys keep their defaults;
// unknown keys and wrongly typed values throw std::invalid_argument with the
// dotted key in the message.
ExperimentConfig config_from_json(const nlohmann::json &tree);

// Parses a TOML document (tables, dotted keys, strings, numbers, booleans,
// nested arrays, comments) into the same tree shape used for JSON.
nlohmann::json parse_toml(const std::string &text);

// Reads a .json or .toml file; the extension decides the parser.
nlohmann::json read_config_tree(const std::string &path);

// Applies "a.b.c=value" onto the tree. The value is read as JSON when it
// parses, otherwise as a bare string.
void apply_override(nlohmann::json &tree, const std::string &assignment);

// Loads the file, applies overrides, resolves and validates. The output
// directory environment override is applied last.
ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides = {});

// Stable 64-bit FNV-1a hash of the canonical serialized config, as 16 hex digits.
// The output directory and worker count do not affect results and are excluded.
std::string config_digest(const ExperimentConfig &config);

} // namespace jpta

#endif
