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

#include "jpta/incremental.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <stdexcept>

namespace jpta
{

SubcarrierLayout::SubcarrierLayout(const FrequencyGrid &grid, const UserScenario &scenario)
{
    if (scenario.m_count() != grid.count())
        throw std::invalid_argument("scenario partition does not match the subcarrier grid");
    const std::size_t n = grid.count();
    freq.resize(n);
    ratio.resize(n);
    u.resize(n);
    v.resize(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        freq[m] = grid.frequency(m);
        ratio[m] = grid.ratio(m);
        const auto &d = scenario.directions()[scenario.owner()[m]];
        u[m] = d.u();
        v[m] = d.v();
    }
    user_begin.push_back(0);
    for (const auto &band : scenario.subbands())
        user_begin.push_back(band.back() + 1);
}

namespace
{

double objective_of(std::span<const double> power, const SubcarrierLayout &layout, double elements)
{
    double total = 0.0;
    for (std::size_t i = 0; i < layout.users(); ++i)
    {
        const double count = static_cast<double>(layout.user_begin[i + 1] - layout.user_begin[i]);
        if (!(power[i] > 0.0))
            return -std::numeric_limits<double>::infinity();
        total += 10.0 * std::log10(power[i] / (elements * count));
    }
    return total;
}

std::vector<double> gains_of(std::span<const double> power, const SubcarrierLayout &layout, double elements)
{
    std::vector<double> out(layout.users());
    for (std::size_t i = 0; i < layout.users(); ++i)
        out[i] = power[i] / (elements * static_cast<double>(layout.user_begin[i + 1] - layout.user_begin[i]));
    return out;
}

void fill_candidates(std::span<const double> delays, const SubcarrierLayout &layout, std::vector<double> &dst,
                     std::vector<double> &re, std::vector<double> &im)
{
    dst.assign(delays.begin(), delays.end());
    const std::size_t n = layout.count();
    re.resize(dst.size() * n);
    im.resize(dst.size() * n);
    for (std::size_t k = 0; k < dst.size(); ++k)
        for (std::size_t m = 0; m < n; ++m)
        {
            const double a = two_pi * layout.freq[m] * dst[k];
            re[k * n + m] = std::cos(a);
            im[k * n + m] = std::sin(a);
        }
}

} // namespace

// ---------------------------------------------------------------- joint

IncrementalObjective::IncrementalObjective(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                           const UserScenario &scenario, JptaConfig config)
    : geometry_(geometry), layout_(grid, scenario), config_(std::move(config))
{
    if (!config_.matches(geometry_))
        throw std::invalid_argument("IncrementalObjective: configuration dimensions do not match the array");
    refresh();
}

double IncrementalObjective::steering(std::size_t y, std::size_t z, std::size_t m) const
{
    return pi * layout_.ratio[m] * (static_cast<double>(y) * layout_.u[m] + static_cast<double>(z) * layout_.v[m]);
}

double IncrementalObjective::objective_from(std::span<const double> power) const
{
    return objective_of(power, layout_, static_cast<double>(geometry_.element_count()));
}

void IncrementalObjective::refresh()
{
    const std::size_t n = layout_.count();
    s_re_.assign(n, 0.0);
    s_im_.assign(n, 0.0);
    for (std::size_t y = 0; y < geometry_.n_az(); ++y)
        for (std::size_t z = 0; z < geometry_.n_el(); ++z)
        {
            const double phase = config_.phase(y, z);
            const double delay = config_.delay(y, z);
            for (std::size_t m = 0; m < n; ++m)
            {
                const double a = phase + two_pi * layout_.freq[m] * delay - steering(y, z, m);
                s_re_[m] += std::cos(a);
                s_im_[m] += std::sin(a);
            }
        }
    power_.assign(layout_.users(), 0.0);
    for (std::size_t i = 0; i < layout_.users(); ++i)
        for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
            power_[i] += s_re_[m] * s_re_[m] + s_im_[m] * s_im_[m];
}

double IncrementalObjective::objective_db() const
{
    return objective_from(power_);
}

std::vector<double> IncrementalObjective::user_mean_gains() const
{
    return gains_of(power_, layout_, static_cast<double>(geometry_.element_count()));
}

double IncrementalObjective::trial(std::size_t y, std::size_t z, double phase, double delay) const
{
    std::vector<double> power(layout_.users(), 0.0);
    const double old_phase = config_.phase(y, z);
    const double old_delay = config_.delay(y, z);
    for (std::size_t i = 0; i < layout_.users(); ++i)
        for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
        {
            const double w = two_pi * layout_.freq[m];
            const double st = steering(y, z, m);
            const double a_old = old_phase + w * old_delay - st;
            const double a_new = phase + w * delay - st;
            const double re = s_re_[m] - std::cos(a_old) + std::cos(a_new);
            const double im = s_im_[m] - std::sin(a_old) + std::sin(a_new);
            power[i] += re * re + im * im;
        }
    return objective_from(power);
}

void IncrementalObjective::set(std::size_t y, std::size_t z, double phase, double delay)
{
    const double old_phase = config_.phase(y, z);
    const double old_delay = config_.delay(y, z);
    for (std::size_t i = 0; i < layout_.users(); ++i)
    {
        power_[i] = 0.0;
        for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
        {
            const double w = two_pi * layout_.freq[m];
            const double st = steering(y, z, m);
            const double a_old = old_phase + w * old_delay - st;
            const double a_new = phase + w * delay - st;
            s_re_[m] += std::cos(a_new) - std::cos(a_old);
            s_im_[m] += std::sin(a_new) - std::sin(a_old);
            power_[i] += s_re_[m] * s_re_[m] + s_im_[m] * s_im_[m];
        }
    }
    config_.phase(y, z) = phase;
    config_.delay(y, z) = delay;
}

void IncrementalObjective::set_delay_candidates(std::span<const double> delays)
{
    fill_candidates(delays, layout_, cand_delays_, cand_re_, cand_im_);
}

void IncrementalObjective::scan_delays(std::size_t y, std::size_t z, std::vector<double> &out) const
{
    const std::size_t n = layout_.count();
    const std::size_t users = layout_.users();
    // Residual sum without element (y, z), and the element's delay-free phasor.
    std::vector<double> rest_re(n), rest_im(n), base_re(n), base_im(n);
    const double phase = config_.phase(y, z);
    const double delay = config_.delay(y, z);
    for (std::size_t m = 0; m < n; ++m)
    {
        const double st = steering(y, z, m);
        const double a_old = phase + two_pi * layout_.freq[m] * delay - st;
        rest_re[m] = s_re_[m] - std::cos(a_old);
        rest_im[m] = s_im_[m] - std::sin(a_old);
        base_re[m] = std::cos(phase - st);
        base_im[m] = std::sin(phase - st);
    }
    out.assign(cand_delays_.size(), 0.0);
    std::vector<double> power(users);
    for (std::size_t k = 0; k < cand_delays_.size(); ++k)
    {
        const double *cr = &cand_re_[k * n];
        const double *ci = &cand_im_[k * n];
        for (std::size_t i = 0; i < users; ++i)
        {
            double acc = 0.0;
            for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
            {
                const double re = rest_re[m] + base_re[m] * cr[m] - base_im[m] * ci[m];
                const double im = rest_im[m] + base_re[m] * ci[m] + base_im[m] * cr[m];
                acc += re * re + im * im;
            }
            power[i] = acc;
        }
        out[k] = objective_from(power);
    }
}

void IncrementalObjective::scan_phases(std::size_t y, std::size_t z, std::span<const double> phases,
                                       std::vector<double> &out) const
{
    const std::size_t n = layout_.count();
    const std::size_t users = layout_.users();
    std::vector<double> rest_re(n), rest_im(n), base_re(n), base_im(n);
    const double phase = config_.phase(y, z);
    const double delay = config_.delay(y, z);
    for (std::size_t m = 0; m < n; ++m)
    {
        const double a = two_pi * layout_.freq[m] * delay - steering(y, z, m);
        rest_re[m] = s_re_[m] - std::cos(a + phase);
        rest_im[m] = s_im_[m] - std::sin(a + phase);
        base_re[m] = std::cos(a);
        base_im[m] = std::sin(a);
    }
    out.assign(phases.size(), 0.0);
    std::vector<double> power(users);
    for (std::size_t k = 0; k < phases.size(); ++k)
    {
        const double cr = std::cos(phases[k]);
        const double ci = std::sin(phases[k]);
        for (std::size_t i = 0; i < users; ++i)
        {
            double acc = 0.0;
            for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
            {
                const double re = rest_re[m] + base_re[m] * cr - base_im[m] * ci;
                const double im = rest_im[m] + base_re[m] * ci + base_im[m] * cr;
                acc += re * re + im * im;
            }
            power[i] = acc;
        }
        out[k] = objective_from(power);
    }
}

// ---------------------------------------------------------------- separated

SeparatedIncrementalObjective::SeparatedIncrementalObjective(const ArrayGeometry &geometry,
                                                             const FrequencyGrid &grid,
                                                             const UserScenario &scenario,
                                                             SeparatedJptaConfig config)
    : geometry_(geometry), layout_(grid, scenario), config_(std::move(config))
{
    if (!config_.matches(geometry_))
        throw std::invalid_argument("SeparatedIncrementalObjective: axis vector lengths do not match the array");
    refresh();
}

double SeparatedIncrementalObjective::axis_term_phase(Axis axis, std::size_t index, std::size_t m) const
{
    const double k = static_cast<double>(index);
    if (axis == Axis::az)
        return config_.phase_az[index] + two_pi * layout_.freq[m] * config_.delay_az[index] -
               pi * layout_.ratio[m] * k * layout_.u[m];
    return config_.phase_el[index] + two_pi * layout_.freq[m] * config_.delay_el[index] -
           pi * layout_.ratio[m] * k * layout_.v[m];
}

double SeparatedIncrementalObjective::objective_from(std::span<const double> power) const
{
    return objective_of(power, layout_, static_cast<double>(geometry_.element_count()));
}

void SeparatedIncrementalObjective::powers(std::vector<double> &out) const
{
    out.assign(layout_.users(), 0.0);
    for (std::size_t i = 0; i < layout_.users(); ++i)
        for (std::size_t m = layout_.user_begin[i]; m < layout_.user_begin[i + 1]; ++m)
            out[i] += (a_re_[m] * a_re_[m] + a_im_[m] * a_im_[m]) * (e_re_[m] * e_re_[m] + e_im_[m] * e_im_[m]);
}

void SeparatedIncrementalObjective::refresh()
{
    const std::size_t n = layout_.count();
    a_re_.assign(n, 0.0);
    a_im_.assign(n, 0.0);
    e_re_.assign(n, 0.0);
    e_im_.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m)
    {
        for (std::size_t y = 0; y < geometry_.n_az(); ++y)
        {
            const double a = axis_term_phase(Axis::az, y, m);
            a_re_[m] += std::cos(a);
            a_im_[m] += std::sin(a);
        }
        for (std::size_t z = 0; z < geometry_.n_el(); ++z)
        {
            const double a = axis_term_phase(Axis::el, z, m);
            e_re_[m] += std::cos(a);
            e_im_[m] += std::sin(a);
        }
    }
}

double SeparatedIncrementalObjective::objective_db() const
{
    std::vector<double> power;
    powers(power);
    return objective_from(power);
}

std::vector<double> SeparatedIncrementalObjective::user_mean_gains() const
{
    std::vector<double> power;
    powers(power);
    return gains_of(power, layout_, static_cast<double>(geometry_.element_count()));
}

double SeparatedIncrementalObjective::trial(Axis axis, std::size_t index, double phase, double delay) const
{
    SeparatedIncrementalObjective copy = *this;
    copy.set(axis, index, phase, delay);
    return copy.objective_db();
}

void SeparatedIncrementalObjective::set(Axis axis, std::size_t index, double phase, double delay)
{
    auto &sum_re = axis == Axis::az ? a_re_ : e_re_;
    auto &sum_im = axis == Axis::az ? a_im_ : e_im_;
    const std::size_t n = layout_.count();
    std::vector<double> old(n);
    for (std::size_t m = 0; m < n; ++m)
        old[m] = axis_term_phase(axis, index, m);
    if (axis == Axis::az)
    {
        config_.phase_az.at(index) = phase;
        config_.delay_az.at(index) = delay;
    }
    else
    {
        config_.phase_el.at(index) = phase;
        config_.delay_el.at(index) = delay;
    }
    for (std::size_t m = 0; m < n; ++m)
    {
        const double a = axis_term_phase(axis, index, m);
        sum_re[m] += std::cos(a) - std::cos(old[m]);
        sum_im[m] += std::sin(a) - std::sin(old[m]);
    }
}

void SeparatedIncrementalObjective::set_delay_candidates(std::span<const double> delays)
{
    fill_candidates(delays, layout_, cand_delays_, cand_re_, cand_im_);
}

namespace
{

// Shared candidate loop: the varied axis sum is rest + base * rot, the other axis
// contributes a fixed per-subcarrier power factor.
template <typename Rotation>
void scan_axis(const SubcarrierLayout &layout, std::span<const double> rest_re, std::span<const double> rest_im,
               std::span<const double> base_re, std::span<const double> base_im, std::span<const double> other,
               std::size_t candidates, Rotation rotation, double elements, std::vector<double> &out)
{
    out.assign(candidates, 0.0);
    std::vector<double> power(layout.users());
    for (std::size_t k = 0; k < candidates; ++k)
    {
        for (std::size_t i = 0; i < layout.users(); ++i)
        {
            double acc = 0.0;
            for (std::size_t m = layout.user_begin[i]; m < layout.user_begin[i + 1]; ++m)
            {
                const auto [cr, ci] = rotation(k, m);
                const double re = rest_re[m] + base_re[m] * cr - base_im[m] * ci;
                const double im = rest_im[m] + base_re[m] * ci + base_im[m] * cr;
                acc += (re * re + im * im) * other[m];
            }
            power[i] = acc;
        }
        out[k] = objective_of(power, layout, elements);
    }
}

} // namespace

void SeparatedIncrementalObjective::scan_delays(Axis axis, std::size_t index, std::vector<double> &out) const
{
    const std::size_t n = layout_.count();
    const auto &sum_re = axis == Axis::az ? a_re_ : e_re_;
    const auto &sum_im = axis == Axis::az ? a_im_ : e_im_;
    const auto &oth_re = axis == Axis::az ? e_re_ : a_re_;
    const auto &oth_im = axis == Axis::az ? e_im_ : a_im_;
    const double delay = axis == Axis::az ? config_.delay_az.at(index) : config_.delay_el.at(index);
    std::vector<double> rest_re(n), rest_im(n), base_re(n), base_im(n), other(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        const double a_old = axis_term_phase(axis, index, m);
        const double no_delay = a_old - two_pi * layout_.freq[m] * delay;
        rest_re[m] = sum_re[m] - std::cos(a_old);
        rest_im[m] = sum_im[m] - std::sin(a_old);
        base_re[m] = std::cos(no_delay);
        base_im[m] = std::sin(no_delay);
        other[m] = oth_re[m] * oth_re[m] + oth_im[m] * oth_im[m];
    }
    const double *cr = cand_re_.data();
    const double *ci = cand_im_.data();
    scan_axis(layout_, rest_re, rest_im, base_re, base_im, other, cand_delays_.size(),
              [cr, ci, n](std::size_t k, std::size_t m) { return std::pair{cr[k * n + m], ci[k * n + m]}; },
              static_cast<double>(geometry_.element_count()), out);
}

void SeparatedIncrementalObjective::scan_phases(Axis axis, std::size_t index, std::span<const double> phases,
                                                std::vector<double> &out) const
{
    const std::size_t n = layout_.count();
    const auto &sum_re = axis == Axis::az ? a_re_ : e_re_;
    const auto &sum_im = axis == Axis::az ? a_im_ : e_im_;
    const auto &oth_re = axis == Axis::az ? e_re_ : a_re_;
    const auto &oth_im = axis == Axis::az ? e_im_ : a_im_;
    const double phase = axis == Axis::az ? config_.phase_az.at(index) : config_.phase_el.at(index);
    std::vector<double> rest_re(n), rest_im(n), base_re(n), base_im(n), other(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        const double a_old = axis_term_phase(axis, index, m);
        rest_re[m] = sum_re[m] - std::cos(a_old);
        rest_im[m] = sum_im[m] - std::sin(a_old);
        base_re[m] = std::cos(a_old - phase);
        base_im[m] = std::sin(a_old - phase);
        other[m] = oth_re[m] * oth_re[m] + oth_im[m] * oth_im[m];
    }
    std::vector<double> cr(phases.size()), ci(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k)
    {
        cr[k] = std::cos(phases[k]);
        ci[k] = std::sin(phases[k]);
    }
    scan_axis(layout_, rest_re, rest_im, base_re, base_im, other, phases.size(),
              [&cr, &ci](std::size_t k, std::size_t) { return std::pair{cr[k], ci[k]}; },
              static_cast<double>(geometry_.element_count()), out);
}

} // namespace jpta
