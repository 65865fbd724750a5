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

#include "jpta/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jpta
{

double nu(std::size_t y, std::size_t z, const Direction &dir)
{
    return nu_az(y, dir) + nu_el(z, dir);
}

std::vector<long> k_offsets(std::span<const double> nus)
{
    if (nus.empty())
        throw std::invalid_argument("k_offsets: at least one user is required");
    std::vector<long> k(nus.size(), 0);
    for (std::size_t i = 1; i < nus.size(); ++i)
        k[i] = k[i - 1] + std::lround((nus[i - 1] - nus[i]) / two_pi);
    return k;
}

SubbandSystem build_system(const UserScenario &scenario, std::span<const double> nus)
{
    if (nus.size() != scenario.user_count())
        throw std::invalid_argument("build_system: one target per user is required");
    SubbandSystem sys;
    sys.m_count = scenario.m_count();
    sys.nu.assign(nus.begin(), nus.end());
    sys.offsets = k_offsets(nus);
    sys.rhs.resize(sys.m_count);
    for (std::size_t i = 0; i < scenario.user_count(); ++i)
    {
        const double target = nus[i] + two_pi * static_cast<double>(sys.offsets[i]);
        for (std::size_t m : scenario.subbands()[i])
            sys.rhs[m] = target;
    }
    return sys;
}

SubbandSystem build_system(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                           const UserScenario &scenario, std::size_t y, std::size_t z)
{
    if (y >= geometry.n_az() || z >= geometry.n_el())
        throw std::invalid_argument("build_system: element index outside the array");
    if (scenario.m_count() != grid.count())
        throw std::invalid_argument("build_system: scenario partition does not match the subcarrier grid");
    std::vector<double> nus;
    nus.reserve(scenario.user_count());
    for (const auto &d : scenario.directions())
        nus.push_back(nu(y, z, d));
    return build_system(scenario, nus);
}

FitResult evaluate_fit(const SubbandSystem &system, double phase_var, double slope_var)
{
    FitResult fit;
    fit.phase_var = phase_var;
    fit.slope_var = slope_var;
    double ss = 0.0;
    double worst = 0.0;
    for (std::size_t m = 0; m < system.m_count; ++m)
    {
        const double e = phase_var + system.row_index(m) * slope_var - system.rhs[m];
        ss += e * e;
        worst = std::max(worst, std::abs(e));
    }
    fit.residual_l2 = std::sqrt(ss);
    fit.residual_linf = worst;
    return fit;
}

FitResult solve_ls(const SubbandSystem &system)
{
    if (system.m_count == 0 || system.rhs.size() != system.m_count)
        throw std::invalid_argument("solve_ls: empty or inconsistent system");
    double sum_b = 0.0;
    double sum_mb = 0.0;
    double sum_mm = 0.0;
    for (std::size_t m = 0; m < system.m_count; ++m)
    {
        const double idx = system.row_index(m);
        sum_b += system.rhs[m];
        sum_mb += idx * system.rhs[m];
        sum_mm += idx * idx;
    }
    const double x1 = sum_b / static_cast<double>(system.m_count);
    const double x2 = sum_mm > 0.0 ? sum_mb / sum_mm : 0.0;
    FitResult fit = evaluate_fit(system, x1, x2);
    fit.degenerate = system.m_count == 1;
    return fit;
}

namespace
{

struct Point
{
    double x;
    double y;
};

double cross(const Point &o, const Point &a, const Point &b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone-chain hull of points sorted by x. upper = true keeps the upper chain.
std::vector<Point> chain(const std::vector<Point> &pts, bool upper)
{
    std::vector<Point> h;
    for (const auto &p : pts)
    {
        while (h.size() >= 2)
        {
            const double c = cross(h[h.size() - 2], h.back(), p);
            if ((upper && c >= 0.0) || (!upper && c <= 0.0))
                h.pop_back();
            else
                break;
        }
        h.push_back(p);
    }
    return h;
}

// Vertical width of the point set along slope s, evaluated on hull vertices only.
double width(const std::vector<Point> &upper, const std::vector<Point> &lower, double s)
{
    double hi = -INFINITY;
    double lo = INFINITY;
    for (const auto &p : upper)
        hi = std::max(hi, p.y - s * p.x);
    for (const auto &p : lower)
        lo = std::min(lo, p.y - s * p.x);
    return hi - lo;
}

} // namespace

FitResult solve_minimax(const SubbandSystem &system)
{
    if (system.m_count == 0 || system.rhs.size() != system.m_count)
        throw std::invalid_argument("solve_minimax: empty or inconsistent system");
    if (system.m_count == 1)
    {
        FitResult fit = evaluate_fit(system, system.rhs[0], 0.0);
        fit.degenerate = true;
        return fit;
    }

    std::vector<Point> pts(system.m_count);
    for (std::size_t m = 0; m < system.m_count; ++m)
        pts[m] = {system.row_index(m), system.rhs[m]};

    const auto upper = chain(pts, true);
    const auto lower = chain(pts, false);

    std::vector<double> slopes;
    for (const auto *h : {&upper, &lower})
        for (std::size_t k = 0; k + 1 < h->size(); ++k)
            slopes.push_back(((*h)[k + 1].y - (*h)[k].y) / ((*h)[k + 1].x - (*h)[k].x));
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

    // The width is convex and piecewise linear in the slope with breakpoints at
    // hull edge slopes, so its minimum over the sorted candidates is found by
    // bisection on the sign of the forward difference.
    std::size_t lo = 0;
    std::size_t hi = slopes.size() - 1;
    while (lo < hi)
    {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (width(upper, lower, slopes[mid]) <= width(upper, lower, slopes[mid + 1]))
            hi = mid;
        else
            lo = mid + 1;
    }
    const double s = slopes[lo];

    double top = -INFINITY;
    double bottom = INFINITY;
    for (const auto &p : pts)
    {
        top = std::max(top, p.y - s * p.x);
        bottom = std::min(bottom, p.y - s * p.x);
    }
    return evaluate_fit(system, 0.5 * (top + bottom), s);
}

bool has_equioscillation(const SubbandSystem &system, const FitResult &fit, double tol)
{
    if (fit.residual_linf <= tol)
        return true;
    // Longest alternating sequence of extremal residuals in row order.
    int count = 0;
    int last_sign = 0;
    for (std::size_t m = 0; m < system.m_count; ++m)
    {
        const double e = fit.phase_var + system.row_index(m) * fit.slope_var - system.rhs[m];
        if (std::abs(std::abs(e) - fit.residual_linf) > tol)
            continue;
        const int sign = e > 0.0 ? 1 : -1;
        if (sign != last_sign)
        {
            ++count;
            last_sign = sign;
        }
    }
    return count >= 3;
}

FitResult solve(const SubbandSystem &system, Criterion criterion)
{
    return criterion == Criterion::ls ? solve_ls(system) : solve_minimax(system);
}

} // namespace jpta
