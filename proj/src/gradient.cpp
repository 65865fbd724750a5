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
#include "jpta/incremental.hpp"
#include "jpta/objective.hpp"
#include "jpta/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jpta
{

namespace
{

constexpr double db_per_neper_power = 10.0 / 2.302585092994045684; // 10 / ln(10)
// Mean gains below this count as a collapsed beam; log and gradient blow up.
constexpr double collapsed_gain = 1e-15;

// G_l and its partials for per-element settings expressed relative to the
// carrier: element phase at subcarrier m is center[e] + 2 pi (f_m - f_c) delay[e].
// Returned partials are w.r.t. the center phase and the delay in seconds
// (carrier-referenced, i.e. with the center phase held fixed), plus the
// partial w.r.t. delay at a fixed hardware phase.
struct Evaluation
{
    double objective = 0.0;
    std::vector<double> d_center;
    std::vector<double> d_delay_centered;
    std::vector<double> d_delay_hardware;
};

Evaluation evaluate(const ArrayGeometry &geometry, const SubcarrierLayout &layout, double carrier,
                    std::span<const double> center, std::span<const double> delay, bool need_gradient)
{
    const std::size_t n_az = geometry.n_az();
    const std::size_t n_el = geometry.n_el();
    const std::size_t n = layout.count();
    const std::size_t elements = n_az * n_el;

    // Within one user's block every element angle is affine in m, so each
    // element phasor is seeded once per block and advanced by a fixed rotation.
    // Loops run over elements innermost so they vectorize. Phasors are
    // regenerated for the gradient pass rather than stored.
    const double spacing = n > 1 ? layout.freq[1] - layout.freq[0] : 0.0;
    std::vector<double> t_re(elements), t_im(elements), r_re(elements), r_im(elements);
    auto seed_block = [&](std::size_t i) {
        const std::size_t b = layout.user_begin[i];
        for (std::size_t y = 0; y < n_az; ++y)
            for (std::size_t z = 0; z < n_el; ++z)
            {
                const std::size_t e = y * n_el + z;
                const double steer =
                    pi * (static_cast<double>(y) * layout.u[b] + static_cast<double>(z) * layout.v[b]);
                const double a0 =
                    center[e] + two_pi * (layout.freq[b] - carrier) * delay[e] - layout.ratio[b] * steer;
                const double da = two_pi * spacing * delay[e] - steer * spacing / carrier;
                t_re[e] = std::cos(a0);
                t_im[e] = std::sin(a0);
                r_re[e] = std::cos(da);
                r_im[e] = std::sin(da);
            }
    };
    auto advance = [&]() {
        for (std::size_t e = 0; e < elements; ++e)
        {
            const double next_re = t_re[e] * r_re[e] - t_im[e] * r_im[e];
            t_im[e] = t_re[e] * r_im[e] + t_im[e] * r_re[e];
            t_re[e] = next_re;
        }
    };

    std::vector<double> s_re(n, 0.0), s_im(n, 0.0);
    for (std::size_t i = 0; i < layout.users(); ++i)
    {
        seed_block(i);
        for (std::size_t m = layout.user_begin[i]; m < layout.user_begin[i + 1]; ++m)
        {
            double acc_re = 0.0, acc_im = 0.0;
            for (std::size_t e = 0; e < elements; ++e)
            {
                acc_re += t_re[e];
                acc_im += t_im[e];
            }
            s_re[m] = acc_re;
            s_im[m] = acc_im;
            advance();
        }
    }

    Evaluation out;
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < layout.users(); ++i)
    {
        double power = 0.0;
        for (std::size_t m = layout.user_begin[i]; m < layout.user_begin[i + 1]; ++m)
            power += s_re[m] * s_re[m] + s_im[m] * s_im[m];
        const double count = static_cast<double>(layout.user_begin[i + 1] - layout.user_begin[i]);
        const double mean = power / (static_cast<double>(elements) * count);
        if (!(mean > collapsed_gain) || !std::isfinite(mean))
            throw std::domain_error("gradient: mean gain of user " + std::to_string(i) +
                                    " collapsed; configuration is degenerate");
        out.objective += to_db(mean);
        for (std::size_t m = layout.user_begin[i]; m < layout.user_begin[i + 1]; ++m)
            weight[m] = db_per_neper_power / power;
    }
    if (!need_gradient)
        return out;

    std::vector<double> offset(n);
    for (std::size_t m = 0; m < n; ++m)
        offset[m] = two_pi * (layout.freq[m] - carrier);
    out.d_center.assign(elements, 0.0);
    out.d_delay_centered.assign(elements, 0.0);
    out.d_delay_hardware.assign(elements, 0.0);
    std::vector<double> &dc = out.d_center;
    std::vector<double> &dd = out.d_delay_centered;
    for (std::size_t i = 0; i < layout.users(); ++i)
    {
        seed_block(i);
        for (std::size_t m = layout.user_begin[i]; m < layout.user_begin[i + 1]; ++m)
        {
            // d|S|^2 / d(angle) = -2 Im(conj(S) t)
            const double a = -2.0 * weight[m] * s_re[m];
            const double b = 2.0 * weight[m] * s_im[m];
            for (std::size_t e = 0; e < elements; ++e)
            {
                const double g = a * t_im[e] + b * t_re[e];
                dc[e] += g;
                dd[e] += g * offset[m];
            }
            advance();
        }
    }
    for (std::size_t e = 0; e < elements; ++e)
        out.d_delay_hardware[e] = dd[e] + two_pi * carrier * dc[e];
    return out;
}

std::vector<double> center_phases(const JptaConfig &config, double carrier)
{
    std::vector<double> out(config.phase.size());
    for (std::size_t e = 0; e < out.size(); ++e)
        out[e] = wrap_phase(config.phase.values()[e] + two_pi * carrier * config.delay.values()[e]);
    return out;
}

struct Adam
{
    std::vector<double> m1, m2;
    std::size_t t = 0;

    explicit Adam(std::size_t n) : m1(n, 0.0), m2(n, 0.0) {}

    void step(std::span<double> x, std::span<const double> grad, const OptimizerSettings &s)
    {
        ++t;
        const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(t));
        const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(t));
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            m1[k] = s.beta1 * m1[k] + (1.0 - s.beta1) * grad[k];
            m2[k] = s.beta2 * m2[k] + (1.0 - s.beta2) * grad[k] * grad[k];
            x[k] -= s.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + s.epsilon);
        }
    }
};

constexpr double ns = 1e-9;

// Runs Adam on the loss. `unpack` maps the parameter vector to per-element
// center phases and delays (seconds); `pullback` maps per-element partials back
// to parameter-space partials of G_l.
template <typename Unpack, typename Pullback>
void run_adam(const ArrayGeometry &geometry, const SubcarrierLayout &layout, double carrier, double ceiling,
              std::vector<double> &params, Unpack unpack, Pullback pullback, const OptimizerSettings &settings,
              std::vector<double> &objective_history, std::vector<double> &loss_history, bool &converged,
              std::size_t &steps)
{
    Adam adam(params.size());
    std::vector<double> center, delay, grad(params.size());
    converged = false;
    steps = 0;
    for (std::size_t step = 0; step <= settings.gd_max_steps; ++step)
    {
        unpack(params, center, delay);
        const auto ev = evaluate(geometry, layout, carrier, center, delay, true);
        const double gap = ceiling - ev.objective;
        const double loss = gap * gap;
        if (!std::isfinite(loss))
            throw std::runtime_error("gd_optimize: non-finite loss at step " + std::to_string(step));
        objective_history.push_back(ev.objective);
        loss_history.push_back(loss);

        const std::size_t w = settings.gd_window;
        if (step >= w)
        {
            const double now = objective_history.back();
            const double then = objective_history[objective_history.size() - 1 - w];
            if (std::abs(now - then) < settings.zeta * std::abs(now))
            {
                converged = true;
                break;
            }
        }
        if (step == settings.gd_max_steps)
            break;

        pullback(ev, grad);
        // dF/dp = -2 (G_max - G_l) dG_l/dp
        for (double &g : grad)
            g *= -2.0 * gap;
        adam.step(params, grad, settings);
        steps = step + 1;
    }
}

} // namespace

Gradient gl_gradient(const ArrayGeometry &geometry, const FrequencyGrid &grid, const UserScenario &scenario,
                     const JptaConfig &config)
{
    if (!config.matches(geometry))
        throw std::invalid_argument("gl_gradient: configuration dimensions do not match the array");
    const SubcarrierLayout layout(grid, scenario);
    const auto ev = evaluate(geometry, layout, grid.carrier(), center_phases(config, grid.carrier()),
                             config.delay.values(), true);
    Gradient g{ElementMatrix(geometry.n_az(), geometry.n_el()), ElementMatrix(geometry.n_az(), geometry.n_el())};
    g.phase.values() = ev.d_center;
    g.delay.values() = ev.d_delay_hardware;
    return g;
}

OptimizationTrace<JptaConfig> gd_optimize(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                          const UserScenario &scenario, const JptaConfig &init,
                                          const QuantizationSpec &spec, const OptimizerSettings &settings)
{
    settings.validate();
    spec.validate();
    if (!init.matches(geometry))
        throw std::invalid_argument("gd_optimize: configuration dimensions do not match the array");

    const SubcarrierLayout layout(grid, scenario);
    const double carrier = grid.carrier();
    const auto start = quantize(init, spec, carrier).config;
    const std::size_t elements = geometry.element_count();

    // Parameters: center phases (radians) then delays (nanoseconds).
    std::vector<double> params = center_phases(start, carrier);
    for (double d : start.delay.values())
        params.push_back(d / ns);

    auto unpack = [elements](const std::vector<double> &p, std::vector<double> &center, std::vector<double> &delay) {
        center.assign(p.begin(), p.begin() + static_cast<long>(elements));
        delay.resize(elements);
        for (std::size_t e = 0; e < elements; ++e)
            delay[e] = p[elements + e] * ns;
    };
    auto pullback = [elements](const Evaluation &ev, std::vector<double> &grad) {
        for (std::size_t e = 0; e < elements; ++e)
        {
            grad[e] = ev.d_center[e];
            grad[elements + e] = ev.d_delay_centered[e] * ns;
        }
    };

    OptimizationTrace<JptaConfig> trace;
    run_adam(geometry, layout, carrier, objective_ceiling_db(geometry, scenario.user_count()), params, unpack,
             pullback, settings, trace.objective_history, trace.loss_history, trace.converged, trace.sweeps_run);

    JptaConfig out = JptaConfig::zeros(geometry);
    for (std::size_t e = 0; e < elements; ++e)
    {
        out.delay.values()[e] = params[elements + e] * ns;
        out.phase.values()[e] = wrap_phase(params[e] - two_pi * carrier * out.delay.values()[e]);
    }
    trace.final_config = quantize(normalize_delays(out, carrier).config, spec, carrier).config;
    return trace;
}

OptimizationTrace<SeparatedJptaConfig> gd_optimize(const ArrayGeometry &geometry, const FrequencyGrid &grid,
                                                   const UserScenario &scenario, const SeparatedJptaConfig &init,
                                                   const QuantizationSpec &spec,
                                                   const OptimizerSettings &settings)
{
    settings.validate();
    spec.validate();
    if (!init.matches(geometry))
        throw std::invalid_argument("gd_optimize: axis vector lengths do not match the array");

    const SubcarrierLayout layout(grid, scenario);
    const double carrier = grid.carrier();
    const auto start = quantize(init, spec, carrier).config;
    const std::size_t n_az = geometry.n_az();
    const std::size_t n_el = geometry.n_el();

    // Parameters: [center_az | center_el | delay_az (ns) | delay_el (ns)].
    std::vector<double> params;
    for (std::size_t y = 0; y < n_az; ++y)
        params.push_back(wrap_phase(start.phase_az[y] + two_pi * carrier * start.delay_az[y]));
    for (std::size_t z = 0; z < n_el; ++z)
        params.push_back(wrap_phase(start.phase_el[z] + two_pi * carrier * start.delay_el[z]));
    for (double d : start.delay_az)
        params.push_back(d / ns);
    for (double d : start.delay_el)
        params.push_back(d / ns);
    const std::size_t off_daz = n_az + n_el;
    const std::size_t off_del = off_daz + n_az;

    auto unpack = [=](const std::vector<double> &p, std::vector<double> &center, std::vector<double> &delay) {
        center.resize(n_az * n_el);
        delay.resize(n_az * n_el);
        for (std::size_t y = 0; y < n_az; ++y)
            for (std::size_t z = 0; z < n_el; ++z)
            {
                center[y * n_el + z] = p[y] + p[n_az + z];
                delay[y * n_el + z] = (p[off_daz + y] + p[off_del + z]) * ns;
            }
    };
    auto pullback = [=](const Evaluation &ev, std::vector<double> &grad) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t y = 0; y < n_az; ++y)
            for (std::size_t z = 0; z < n_el; ++z)
            {
                const std::size_t e = y * n_el + z;
                grad[y] += ev.d_center[e];
                grad[n_az + z] += ev.d_center[e];
                grad[off_daz + y] += ev.d_delay_centered[e] * ns;
                grad[off_del + z] += ev.d_delay_centered[e] * ns;
            }
    };

    OptimizationTrace<SeparatedJptaConfig> trace;
    run_adam(geometry, layout, carrier, objective_ceiling_db(geometry, scenario.user_count()), params, unpack,
             pullback, settings, trace.objective_history, trace.loss_history, trace.converged, trace.sweeps_run);

    SeparatedJptaConfig out = SeparatedJptaConfig::zeros(geometry);
    for (std::size_t y = 0; y < n_az; ++y)
    {
        out.delay_az[y] = params[off_daz + y] * ns;
        out.phase_az[y] = wrap_phase(params[y] - two_pi * carrier * out.delay_az[y]);
    }
    for (std::size_t z = 0; z < n_el; ++z)
    {
        out.delay_el[z] = params[off_del + z] * ns;
        out.phase_el[z] = wrap_phase(params[n_az + z] - two_pi * carrier * out.delay_el[z]);
    }
    trace.final_config = quantize(normalize_delays(out, carrier), spec, carrier).config;
    return trace;
}

} // namespace jpta
