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

#ifndef JPTA_TYPES_HPP
#define JPTA_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace jpta
{

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Uniform planar array with half-wavelength spacing at the carrier.
// Index y runs along the azimuth (y) axis, z along the elevation (z) axis.
class ArrayGeometry
{
public:
    ArrayGeometry(std::size_t n_az, std::size_t n_el);

    std::size_t n_az() const { return n_az_; }
    std::size_t n_el() const { return n_el_; }
    std::size_t element_count() const { return n_az_ * n_el_; }

    bool operator==(const ArrayGeometry &) const = default;

private:
    std::size_t n_az_;
    std::size_t n_el_;
};

// OFDM subcarrier lattice. Subcarrier m in {0..M} sits at f_c + (m - M/2) * delta_f,
// with M + 1 = m_count odd so the centered index m' = m - M/2 is an integer.
class FrequencyGrid
{
public:
    FrequencyGrid(double f_c, double delta_f, std::size_t m_count);

    double carrier() const { return f_c_; }
    double spacing() const { return delta_f_; }
    std::size_t count() const { return m_count_; }
    std::size_t half_span() const { return (m_count_ - 1) / 2; }

    // Centered index m' = m - M/2.
    long centered(std::size_t m) const { return static_cast<long>(m) - static_cast<long>(half_span()); }
    double frequency(std::size_t m) const { return f_c_ + static_cast<double>(centered(m)) * delta_f_; }
    double ratio(std::size_t m) const { return frequency(m) / f_c_; }

    bool operator==(const FrequencyGrid &) const = default;

private:
    double f_c_;
    double delta_f_;
    std::size_t m_count_;
};

// Angle of arrival in degrees. Elevation is measured from the +z axis.
class Direction
{
public:
    Direction(double theta_az_deg, double theta_el_deg);

    double az_deg() const { return az_deg_; }
    double el_deg() const { return el_deg_; }

    // sin(az) * sin(el): the azimuth-axis direction cosine.
    double u() const { return u_; }
    // cos(el): the elevation-axis direction cosine.
    double v() const { return v_; }

    bool operator==(const Direction &o) const { return az_deg_ == o.az_deg_ && el_deg_ == o.el_deg_; }

private:
    double az_deg_;
    double el_deg_;
    double u_;
    double v_;
};

// Dense n_az x n_el matrix, row-major in y.
class ElementMatrix
{
public:
    ElementMatrix() = default;
    ElementMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double &operator()(std::size_t y, std::size_t z) { return data_[y * cols_ + z]; }
    double operator()(std::size_t y, std::size_t z) const { return data_[y * cols_ + z]; }

    std::vector<double> &values() { return data_; }
    const std::vector<double> &values() const { return data_; }

    bool operator==(const ElementMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Per-element phase shifter (radians) and true-time-delay (seconds) settings.
struct JptaConfig
{
    ElementMatrix phase;
    ElementMatrix delay;

    static JptaConfig zeros(const ArrayGeometry &geometry);
    bool matches(const ArrayGeometry &geometry) const;
};

// Axis-factored settings: element (y, z) uses phase_az[y] + phase_el[z] and
// delay_az[y] + delay_el[z].
struct SeparatedJptaConfig
{
    std::vector<double> phase_az;
    std::vector<double> delay_az;
    std::vector<double> phase_el;
    std::vector<double> delay_el;

    static SeparatedJptaConfig zeros(const ArrayGeometry &geometry);
    bool matches(const ArrayGeometry &geometry) const;
    JptaConfig expand() const;
};

struct MetricsReport
{
    std::vector<double> per_user_mean_gain; // linear
    double log_mean_gain = 0.0;             // dB, summed over users
    std::string solver_name;
    double wall_time = 0.0; // seconds
};

// Wraps an angle to [0, 2*pi).
double wrap_phase(double phase);

// Shortest distance between two angles on the circle.
double circular_distance(double a, double b);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace jpta

#endif
