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

#include "jpta/scenario.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jpta
{

namespace
{

// Guards floor() against cumulative sums landing a few ulps below an integer.
constexpr double floor_slack = 1e-9;

} // namespace

std::vector<std::size_t> partition_boundaries(const std::vector<double> &alphas, std::size_t m_count,
                                              PartitionRule rule)
{
    const std::size_t n = alphas.size();
    std::vector<std::size_t> c(n + 1, 0);
    const double total = static_cast<double>(m_count);
    if (rule == PartitionRule::cumulative_floor)
    {
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
            cum += alphas[i];
            c[i + 1] = static_cast<std::size_t>(std::floor(cum * total + floor_slack));
        }
    }
    else
    {
        for (std::size_t i = 0; i + 1 < n; ++i)
            c[i + 1] = c[i] + static_cast<std::size_t>(std::floor(alphas[i] * total + floor_slack));
    }
    c[n] = m_count;
    return c;
}

std::vector<double> equal_alphas(std::size_t n_users)
{
    if (n_users == 0)
        throw std::invalid_argument("equal_alphas: need at least one user");
    return std::vector<double>(n_users, 1.0 / static_cast<double>(n_users));
}

UserScenario::UserScenario(std::vector<Direction> directions, std::vector<double> alphas, std::size_t m_count,
                           PartitionRule rule)
    : directions_(std::move(directions)), alphas_(std::move(alphas)), m_count_(m_count)
{
    if (directions_.empty())
        throw std::invalid_argument("UserScenario: at least one user is required");
    if (alphas_.size() != directions_.size())
        throw std::invalid_argument("UserScenario: " + std::to_string(alphas_.size()) + " bandwidth ratios for " +
                                    std::to_string(directions_.size()) + " users");
    for (double a : alphas_)
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("UserScenario: bandwidth ratios must be positive");
    const double sum = std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("UserScenario: bandwidth ratios sum to " + std::to_string(sum) + ", not 1");
    if (m_count == 0)
        throw std::invalid_argument("UserScenario: empty subcarrier grid");

    const auto c = partition_boundaries(alphas_, m_count, rule);
    subbands_.resize(directions_.size());
    owner_.resize(m_count);
    for (std::size_t i = 0; i < directions_.size(); ++i)
    {
        if (c[i + 1] <= c[i])
            throw std::invalid_argument("UserScenario: user " + std::to_string(i) +
                                        " receives no subcarriers; increase its bandwidth ratio");
        for (std::size_t m = c[i]; m < c[i + 1]; ++m)
        {
            subbands_[i].push_back(m);
            owner_[m] = i;
        }
    }
}

} // namespace jpta
