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

#ifndef JPTA_INCREMENTAL_HPP
#define JPTA_INCREMENTAL_HPP

#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jpta
{

// Per-subcarrier constants shared by the incremental evaluators: frequency,
// exact f_m / f_c, and the direction cosines of the user that owns the subcarrier.
struct SubcarrierLayout
{
    std::vector<double> freq;
    std::vector<double> ratio;
    std::vector<double> u;
    std::vector<double> v;
    // User i owns subcarriers [user_begin[i], user_begin[i + 1]).
    std::vector<std::size_t> user_begin;

    SubcarrierLayout(const FrequencyGrid &grid, const UserScenario &scenario);
    std::size_t users() const { return user_begin.size() - 1; }
    std::size_t count() const { return freq.size(); }
};

// G_l of a joint configuration with one complex array-factor sum per subcarrier.
// Changing a single element costs O(M) rather than O(n_az n_el M). Values can
// be -inf when a user's gain vanishes; nothing here throws on that.
class IncrementalObjective
{
public:
    IncrementalObjective(const ArrayGeometry &geometry, const FrequencyGrid &grid, const UserScenario &scenario,
                         JptaConfig config);

    double objective_db() const;
    std::vector<double> user_mean_gains() const;
    const JptaConfig &config() const { return config_; }

    // Recomputes all sums from scratch, discarding accumulated rounding.
    void refresh();

    // G_l if element (y, z) were set to (phase, delay). The state is unchanged.
    double trial(std::size_t y, std::size_t z, double phase, double delay) const;
    void set(std::size_t y, std::size_t z, double phase, double delay);

    // Precomputes exp(j 2 pi f_m d) for a fixed candidate delay list.
    void set_delay_candidates(std::span<const double> delays);
    // G_l for each registered candidate delay of element (y, z), phase held.
    void scan_delays(std::size_t y, std::size_t z, std::vector<double> &out) const;
    // G_l for each candidate phase of element (y, z), delay held.
    void scan_phases(std::size_t y, std::size_t z, std::span<const double> phases, std::vector<double> &out) const;

private:
    ArrayGeometry geometry_;
    SubcarrierLayout layout_;
    JptaConfig config_;
    std::vector<double> s_re_;
    std::vector<double> s_im_;
    std::vector<double> power_;
    std::vector<double> cand_delays_;
    std::vector<double> cand_re_;
    std::vector<double> cand_im_;

    double steering(std::size_t y, std::size_t z, std::size_t m) const;
    double objective_from(std::span<const double> power) const;
};

enum class Axis
{
    az,
    el
};

// G_l of an axis-separated configuration. The array factor factorizes per
// subcarrier into an azimuth sum times an elevation sum, each kept incrementally.
class SeparatedIncrementalObjective
{
public:
    SeparatedIncrementalObjective(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                  const UserScenario &scenario, SeparatedJptaConfig config);

    double objective_db() const;
    std::vector<double> user_mean_gains() const;
    const SeparatedJptaConfig &config() const { return config_; }

    void refresh();
    double trial(Axis axis, std::size_t index, double phase, double delay) const;
    void set(Axis axis, std::size_t index, double phase, double delay);

    void set_delay_candidates(std::span<const double> delays);
    void scan_delays(Axis axis, std::size_t index, std::vector<double> &out) const;
    void scan_phases(Axis axis, std::size_t index, std::span<const double> phases, std::vector<double> &out) const;

private:
    ArrayGeometry geometry_;
    SubcarrierLayout layout_;
    SeparatedJptaConfig config_;
    // Per-axis sums; the array factor at m is (a_re + j a_im)(e_re + j e_im).
    std::vector<double> a_re_, a_im_, e_re_, e_im_;
    std::vector<double> cand_delays_;
    std::vector<double> cand_re_;
    std::vector<double> cand_im_;

    double axis_term_phase(Axis axis, std::size_t index, std::size_t m) const;
    double objective_from(std::span<const double> power) const;
    void powers(std::vector<double> &out) const;
};

} // namespace jpta

#endif
