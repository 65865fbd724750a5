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

#ifndef JPTA_GAIN_HPP
#define JPTA_GAIN_HPP

#include "jpta/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jpta
{

// Steering phase of element (y, z) at subcarrier m:
// pi * (f_m / f_c) * (y * sin(az) * sin(el) + z * cos(el)).
double steering_phase(const ArrayGeometry &geometry, const FrequencyGrid &grid, const Direction &dir,
                      std::size_t m, std::size_t y, std::size_t z);

// Beamforming gain normalized so that perfect alignment yields n_az * n_el.
// Delays enter the weight phase as phase + 2*pi*f_m*delay. Uses the exact f_m / f_c.
double gain(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
            const Direction &dir, std::size_t m);

// Factored gain G_az * G_el of an axis-separated configuration.
double gain_separated(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                      const SeparatedJptaConfig &config, const Direction &dir, std::size_t m);

// Mean gain over a set of subcarriers.
double user_mean_gain(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                      const Direction &dir, std::span<const std::size_t> subband);

double user_mean_gain(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                      const SeparatedJptaConfig &config, const Direction &dir,
                      std::span<const std::size_t> subband);

// Sum over users of 10*log10(mean gain). Throws std::domain_error on a nonpositive entry.
double log_mean_gain(std::span<const double> per_user_mean_gain);

enum class MapReduction
{
    max_over_subcarriers,
    per_subcarrier
};

// Gain over an angle grid. Values are linear and laid out as
// values[(i_az * n_el_angles + i_el) * depth + m], where depth is 1 for the
// max-over-subcarriers reduction and m_count otherwise.
struct GainMap
{
    std::vector<double> az_deg;
    std::vector<double> el_deg;
    MapReduction reduction = MapReduction::max_over_subcarriers;
    std::size_t depth = 1;
    std::vector<double> values;

    double at(std::size_t i_az, std::size_t i_el, std::size_t m = 0) const
    {
        return values[(i_az * el_deg.size() + i_el) * depth + m];
    }
};

GainMap gain_map(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                 std::span<const double> az_deg, std::span<const double> el_deg,
                 MapReduction reduction = MapReduction::max_over_subcarriers);

struct NormalizedDelays
{
    JptaConfig config;
    // Set when the delay span after shifting exceeds the hardware maximum.
    std::optional<double> span_violation;
};

// Shifts all delays so the smallest is zero and re-wraps phases to [0, 2*pi).
// The phase compensation -2*pi*f_c*shift keeps the carrier response unchanged;
// the gain is unaffected at every direction and subcarrier.
NormalizedDelays normalize_delays(const JptaConfig &config, double carrier_hz,
                                  std::optional<double> tau_max = std::nullopt);

// Axis-wise variant: shifts each axis vector independently.
SeparatedJptaConfig normalize_delays(const SeparatedJptaConfig &config, double carrier_hz);

} // namespace jpta

#endif
