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

#ifndef JPTA_LINSYS_HPP
#define JPTA_LINSYS_HPP

#include "jpta/scenario.hpp"
#include "jpta/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jpta
{

// Design steering target of element (y, z) for a user: pi * (y * sin(az) sin(el) + z * cos(el)).
// This is the steering phase under the f_m / f_c ~ 1 design assumption.
double nu(std::size_t y, std::size_t z, const Direction &dir);

// Azimuth-axis and elevation-axis parts of nu for the separated design.
inline double nu_az(std::size_t y, const Direction &dir) { return pi * static_cast<double>(y) * dir.u(); }
inline double nu_el(std::size_t z, const Direction &dir) { return pi * static_cast<double>(z) * dir.v(); }

// Integer 2*pi offsets that bring consecutive user targets within pi of each other.
// k[0] = 0, k[i] = k[i-1] + round((nu[i-1] - nu[i]) / (2*pi)), ties away from zero.
std::vector<long> k_offsets(std::span<const double> nus);

// Stacked per-subcarrier system A x = b for one antenna (or one axis element).
// Row m has design row [1, m'] with m' = m - M/2; every row owned by user i
// targets nu_i + 2*pi*k_i.
struct SubbandSystem
{
    std::size_t m_count = 0;
    std::vector<double> rhs;
    std::vector<long> offsets;
    std::vector<double> nu;

    double row_index(std::size_t m) const
    {
        return static_cast<double>(static_cast<long>(m) - static_cast<long>((m_count - 1) / 2));
    }
};

// Builds the system from per-user targets and the scenario's partition.
SubbandSystem build_system(const UserScenario &scenario, std::span<const double> nus);

// Joint design system of element (y, z).
SubbandSystem build_system(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                           const UserScenario &scenario, std::size_t y, std::size_t z);

// Line fit x1 + m' * x2 to a SubbandSystem.
struct FitResult
{
    double phase_var = 0.0; // x1, radians
    double slope_var = 0.0; // x2 = 2*pi*delta_f*tau, radians per subcarrier index
    double residual_l2 = 0.0;
    double residual_linf = 0.0;
    // True when the slope is underdetermined (a single row).
    bool degenerate = false;
};

// Residual norms of the line (x1, x2) on a system.
FitResult evaluate_fit(const SubbandSystem &system, double phase_var, double slope_var);

// Least squares via the normal equations. The centered design column makes
// A^T A diagonal: x1 = mean(b), x2 = sum(m' b) / sum(m'^2).
FitResult solve_ls(const SubbandSystem &system);

// Chebyshev (L-infinity) line fit. The optimal slope is a breakpoint of the
// convex vertical-width function of the point set, which is an edge slope of
// its upper or lower convex hull; the intercept centers the strip.
FitResult solve_minimax(const SubbandSystem &system);

// Checks the Chebyshev optimality certificate: at least three rows attain
// |residual| = residual_linf (within tol) with alternating signs in row order.
bool has_equioscillation(const SubbandSystem &system, const FitResult &fit, double tol = 1e-9);

enum class Criterion
{
    ls,
    minimax
};

FitResult solve(const SubbandSystem &system, Criterion criterion);

} // namespace jpta

#endif
