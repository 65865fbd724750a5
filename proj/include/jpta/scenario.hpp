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

#ifndef JPTA_SCENARIO_HPP
#define JPTA_SCENARIO_HPP

#include "jpta/types.hpp"

#include <cstddef>
#include <vector>

namespace jpta
{

enum class PartitionRule
{
    // User i receives [floor(C_{i-1} (M+1)), floor(C_i (M+1))) with C_i the cumulative ratio.
    cumulative_floor,
    // User i receives floor(alpha_i (M+1)) subcarriers; the last user absorbs the remainder.
    per_user_floor
};

// Users, their bandwidth ratios, and the contiguous subcarrier blocks assigned to them.
class UserScenario
{
public:
    UserScenario(std::vector<Direction> directions, std::vector<double> alphas, std::size_t m_count,
                 PartitionRule rule = PartitionRule::cumulative_floor);

    std::size_t user_count() const { return directions_.size(); }
    const std::vector<Direction> &directions() const { return directions_; }
    const std::vector<double> &alphas() const { return alphas_; }
    const std::vector<std::vector<std::size_t>> &subbands() const { return subbands_; }
    std::size_t m_count() const { return m_count_; }

    // Owner of each subcarrier, length m_count.
    const std::vector<std::size_t> &owner() const { return owner_; }

private:
    std::vector<Direction> directions_;
    std::vector<double> alphas_;
    std::size_t m_count_;
    std::vector<std::vector<std::size_t>> subbands_;
    std::vector<std::size_t> owner_;
};

// Block boundaries c_0 = 0 < c_1 < ... < c_N = m_count; user i owns [c_i, c_{i+1}).
std::vector<std::size_t> partition_boundaries(const std::vector<double> &alphas, std::size_t m_count,
                                              PartitionRule rule);

std::vector<double> equal_alphas(std::size_t n_users);

} // namespace jpta

#endif
