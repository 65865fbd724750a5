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

#include "jpta/gain.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace jpta
{

namespace
{

using cplx = std::complex<double>;

void check_indices(const ArrayGeometry &geometry, const FrequencyGrid &grid, std::size_t m, std::size_t y,
                   std::size_t z)
{
    if (y >= geometry.n_az() || z >= geometry.n_el())
        throw std::invalid_argument("element index (" + std::to_string(y) + ", " + std::to_string(z) +
                                    ") outside the array");
    if (m >= grid.count())
        throw std::invalid_argument("subcarrier index " + std::to_string(m) + " outside the grid");
}

void check_subcarrier(const FrequencyGrid &grid, std::size_t m)
{
    if (m >= grid.count())
        throw std::invalid_argument("subcarrier index " + std::to_string(m) + " outside the grid");
}

// |sum_k exp(j(phase_k + 2 pi f delay_k - pi r k c))|^2 / n over one axis.
double axis_gain(std::span<const double> phase, std::span<const double> delay, double f, double r, double c)
{
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < phase.size(); ++k)
        acc += std::polar(1.0, phase[k] + two_pi * f * delay[k] - pi * r * static_cast<double>(k) * c);
    return std::norm(acc) / static_cast<double>(phase.size());
}

} // namespace

double steering_phase(const ArrayGeometry &geometry, const FrequencyGrid &grid, const Direction &dir,
                      std::size_t m, std::size_t y, std::size_t z)
{
    check_indices(geometry, grid, m, y, z);
    return pi * grid.ratio(m) * (static_cast<double>(y) * dir.u() + static_cast<double>(z) * dir.v());
}

double gain(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
            const Direction &dir, std::size_t m)
{
    if (!config.matches(geometry))
        throw std::invalid_argument("gain: configuration dimensions do not match the array");
    check_subcarrier(grid, m);

    const double f = grid.frequency(m);
    const double r = grid.ratio(m);
    cplx acc{0.0, 0.0};
    for (std::size_t y = 0; y < geometry.n_az(); ++y)
        for (std::size_t z = 0; z < geometry.n_el(); ++z)
        {
            const double h = config.phase(y, z) + two_pi * f * config.delay(y, z);
            const double omega = pi * r * (static_cast<double>(y) * dir.u() + static_cast<double>(z) * dir.v());
            acc += std::polar(1.0, h - omega);
        }
    return std::norm(acc) / static_cast<double>(geometry.element_count());
}

double gain_separated(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                      const SeparatedJptaConfig &config, const Direction &dir, std::size_t m)
{
    if (!config.matches(geometry))
        throw std::invalid_argument("gain_separated: axis vector lengths do not match the array");
    check_subcarrier(grid, m);

    const double f = grid.frequency(m);
    const double r = grid.ratio(m);
    return axis_gain(config.phase_az, config.delay_az, f, r, dir.u()) *
           axis_gain(config.phase_el, config.delay_el, f, r, dir.v());
}

double user_mean_gain(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                      const Direction &dir, std::span<const std::size_t> subband)
{
    if (subband.empty())
        throw std::invalid_argument("user_mean_gain: empty subband");
    double sum = 0.0;
    for (std::size_t m : subband)
        sum += gain(geometry, grid, config, dir, m);
    return sum / static_cast<double>(subband.size());
}

double user_mean_gain(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                      const SeparatedJptaConfig &config, const Direction &dir,
                      std::span<const std::size_t> subband)
{
    if (subband.empty())
        throw std::invalid_argument("user_mean_gain: empty subband");
    double sum = 0.0;
    for (std::size_t m : subband)
        sum += gain_separated(geometry, grid, config, dir, m);
    return sum / static_cast<double>(subband.size());
}

double log_mean_gain(std::span<const double> per_user_mean_gain)
{
    double total = 0.0;
    for (double g : per_user_mean_gain)
    {
        if (!(g > 0.0))
            throw std::domain_error("log_mean_gain: nonpositive user gain (collapsed beam)");
        total += to_db(g);
    }
    return total;
}

GainMap gain_map(const ArrayGeometry &geometry, const FrequencyGrid &grid, const JptaConfig &config,
                 std::span<const double> az_deg, std::span<const double> el_deg, MapReduction reduction)
{
    if (az_deg.empty() || el_deg.empty())
        throw std::invalid_argument("gain_map: angle grids must be non-empty");
    if (!config.matches(geometry))
        throw std::invalid_argument("gain_map: configuration dimensions do not match the array");

    const std::size_t n_az = geometry.n_az();
    const std::size_t n_el = geometry.n_el();
    const std::size_t n_m = grid.count();
    const double norm = 1.0 / static_cast<double>(geometry.element_count());

    // Angle-independent weights exp(j(phase + 2 pi f_m delay)), laid out [m][y][z].
    std::vector<cplx> weights(n_m * n_az * n_el);
    for (std::size_t m = 0; m < n_m; ++m)
    {
        const double f = grid.frequency(m);
        for (std::size_t y = 0; y < n_az; ++y)
            for (std::size_t z = 0; z < n_el; ++z)
                weights[(m * n_az + y) * n_el + z] =
                    std::polar(1.0, config.phase(y, z) + two_pi * f * config.delay(y, z));
    }

    std::vector<Direction> dirs;
    dirs.reserve(az_deg.size() * el_deg.size());
    for (double a : az_deg)
        for (double e : el_deg)
            dirs.emplace_back(a, e);

    GainMap out;
    out.az_deg.assign(az_deg.begin(), az_deg.end());
    out.el_deg.assign(el_deg.begin(), el_deg.end());
    out.reduction = reduction;
    out.depth = reduction == MapReduction::per_subcarrier ? n_m : 1;
    out.values.assign(az_deg.size() * el_deg.size() * out.depth, 0.0);

    std::vector<cplx> column(n_az);
    for (std::size_t i_el = 0; i_el < el_deg.size(); ++i_el)
    {
        const double v = dirs[i_el].v();
        for (std::size_t m = 0; m < n_m; ++m)
        {
            const double r = grid.ratio(m);
            // Elevation-axis partial sums for every row y.
            const cplx step_z = std::polar(1.0, -pi * r * v);
            for (std::size_t y = 0; y < n_az; ++y)
            {
                const cplx *w = &weights[(m * n_az + y) * n_el];
                cplx acc{0.0, 0.0};
                cplx rot{1.0, 0.0};
                for (std::size_t z = 0; z < n_el; ++z)
                {
                    acc += w[z] * rot;
                    rot *= step_z;
                }
                column[y] = acc;
            }
            for (std::size_t i_az = 0; i_az < az_deg.size(); ++i_az)
            {
                const double u = dirs[i_az * el_deg.size() + i_el].u();
                const cplx step_y = std::polar(1.0, -pi * r * u);
                cplx acc{0.0, 0.0};
                cplx rot{1.0, 0.0};
                for (std::size_t y = 0; y < n_az; ++y)
                {
                    acc += column[y] * rot;
                    rot *= step_y;
                }
                const double g = std::norm(acc) * norm;
                const std::size_t base = (i_az * el_deg.size() + i_el) * out.depth;
                if (reduction == MapReduction::per_subcarrier)
                    out.values[base + m] = g;
                else
                    out.values[base] = std::max(out.values[base], g);
            }
        }
    }
    return out;
}

NormalizedDelays normalize_delays(const JptaConfig &config, double carrier_hz, std::optional<double> tau_max)
{
    const auto &d = config.delay.values();
    if (d.empty())
        return {config, std::nullopt};
    for (double x : d)
        if (!std::isfinite(x))
            throw std::invalid_argument("normalize_delays: non-finite delay");
    for (double x : config.phase.values())
        if (!std::isfinite(x))
            throw std::invalid_argument("normalize_delays: non-finite phase");

    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    const double shift = -*lo;
    const double span = *hi - *lo;

    NormalizedDelays out{config, std::nullopt};
    const double phase_shift = -two_pi * carrier_hz * shift;
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        out.config.delay.values()[i] = d[i] + shift;
        out.config.phase.values()[i] = wrap_phase(config.phase.values()[i] + phase_shift);
    }
    for (double &x : out.config.delay.values())
        x = std::max(x, 0.0);
    if (tau_max && span > *tau_max)
        out.span_violation = span;
    return out;
}

SeparatedJptaConfig normalize_delays(const SeparatedJptaConfig &config, double carrier_hz)
{
    SeparatedJptaConfig out = config;
    auto shift_axis = [carrier_hz](std::vector<double> &phase, std::vector<double> &delay) {
        if (delay.empty())
            return;
        const double shift = -*std::min_element(delay.begin(), delay.end());
        for (std::size_t k = 0; k < delay.size(); ++k)
        {
            delay[k] = std::max(delay[k] + shift, 0.0);
            phase[k] = wrap_phase(phase[k] - two_pi * carrier_hz * shift);
        }
    };
    shift_axis(out.phase_az, out.delay_az);
    shift_axis(out.phase_el, out.delay_el);
    return out;
}

} // namespace jpta
