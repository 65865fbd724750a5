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

#include "jpta/types.hpp"

#include <stdexcept>
#include <string>

namespace jpta
{

ArrayGeometry::ArrayGeometry(std::size_t n_az, std::size_t n_el) : n_az_(n_az), n_el_(n_el)
{
    if (n_az == 0 || n_el == 0)
        throw std::invalid_argument("ArrayGeometry: n_az and n_el must be at least 1");
}

FrequencyGrid::FrequencyGrid(double f_c, double delta_f, std::size_t m_count)
    : f_c_(f_c), delta_f_(delta_f), m_count_(m_count)
{
    if (!(f_c > 0.0) || !std::isfinite(f_c))
        throw std::invalid_argument("FrequencyGrid: carrier frequency must be positive");
    if (!(delta_f > 0.0) || !std::isfinite(delta_f))
        throw std::invalid_argument("FrequencyGrid: subcarrier spacing must be positive");
    if (m_count == 0 || m_count % 2 == 0)
        throw std::invalid_argument("FrequencyGrid: subcarrier count must be odd, got " + std::to_string(m_count));
    if (frequency(0) <= 0.0)
        throw std::invalid_argument("FrequencyGrid: lowest subcarrier frequency is not positive");
}

Direction::Direction(double theta_az_deg, double theta_el_deg) : az_deg_(theta_az_deg), el_deg_(theta_el_deg)
{
    if (!std::isfinite(theta_az_deg) || theta_az_deg < -180.0 || theta_az_deg > 180.0)
        throw std::invalid_argument("Direction: azimuth must lie in [-180, 180] degrees");
    if (!std::isfinite(theta_el_deg) || theta_el_deg < 0.0 || theta_el_deg > 180.0)
        throw std::invalid_argument("Direction: elevation must lie in [0, 180] degrees");
    const double az = theta_az_deg * pi / 180.0;
    const double el = theta_el_deg * pi / 180.0;
    u_ = std::sin(az) * std::sin(el);
    v_ = std::cos(el);
}

JptaConfig JptaConfig::zeros(const ArrayGeometry &geometry)
{
    return {ElementMatrix(geometry.n_az(), geometry.n_el()), ElementMatrix(geometry.n_az(), geometry.n_el())};
}

bool JptaConfig::matches(const ArrayGeometry &geometry) const
{
    return phase.rows() == geometry.n_az() && phase.cols() == geometry.n_el() &&
           delay.rows() == geometry.n_az() && delay.cols() == geometry.n_el();
}

SeparatedJptaConfig SeparatedJptaConfig::zeros(const ArrayGeometry &geometry)
{
    return {std::vector<double>(geometry.n_az()), std::vector<double>(geometry.n_az()),
            std::vector<double>(geometry.n_el()), std::vector<double>(geometry.n_el())};
}

bool SeparatedJptaConfig::matches(const ArrayGeometry &geometry) const
{
    return phase_az.size() == geometry.n_az() && delay_az.size() == geometry.n_az() &&
           phase_el.size() == geometry.n_el() && delay_el.size() == geometry.n_el();
}

JptaConfig SeparatedJptaConfig::expand() const
{
    if (phase_az.size() != delay_az.size() || phase_el.size() != delay_el.size())
        throw std::invalid_argument("SeparatedJptaConfig: phase and delay vector lengths differ");
    JptaConfig out{ElementMatrix(phase_az.size(), phase_el.size()), ElementMatrix(phase_az.size(), phase_el.size())};
    for (std::size_t y = 0; y < phase_az.size(); ++y)
        for (std::size_t z = 0; z < phase_el.size(); ++z)
        {
            out.phase(y, z) = phase_az[y] + phase_el[z];
            out.delay(y, z) = delay_az[y] + delay_el[z];
        }
    return out;
}

double wrap_phase(double phase)
{
    double w = std::fmod(phase, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi)
        w = 0.0;
    return w;
}

double circular_distance(double a, double b)
{
    const double d = wrap_phase(a - b);
    return d > pi ? two_pi - d : d;
}

} // namespace jpta
