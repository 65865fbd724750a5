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

#include "jpta/quantize.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jpta
{

void QuantizationSpec::validate() const
{
    if (!(tau_step > 0.0) || !std::isfinite(tau_step))
        throw std::invalid_argument("QuantizationSpec: tau_step must be positive");
    if (!(tau_max >= tau_step) || !std::isfinite(tau_max))
        throw std::invalid_argument("QuantizationSpec: tau_max must be at least tau_step");
    if (phase_bits < 1 || phase_bits > 30)
        throw std::invalid_argument("QuantizationSpec: phase_bits must lie in [1, 30]");
}

std::size_t QuantizationSpec::delay_levels() const
{
    return static_cast<std::size_t>(std::floor(tau_max / tau_step + 1e-9)) + 1;
}

double quantize_delay(double delay, const QuantizationSpec &spec, bool *clamped)
{
    const double top = static_cast<double>(spec.delay_levels() - 1);
    double idx = std::floor(delay / spec.tau_step + 0.5);
    bool out_of_range = false;
    if (idx < 0.0)
    {
        idx = 0.0;
        out_of_range = delay < 0.0;
    }
    if (idx > top)
    {
        idx = top;
        out_of_range = delay > spec.tau_max;
    }
    if (clamped)
        *clamped = out_of_range;
    return idx * spec.tau_step;
}

double quantize_phase(double phase, const QuantizationSpec &spec)
{
    const long levels = 1L << spec.phase_bits;
    const long idx = static_cast<long>(std::floor(wrap_phase(phase) / spec.phase_step() + 0.5)) % levels;
    return static_cast<double>(idx) * spec.phase_step();
}

namespace
{

std::size_t quantize_pairs(std::vector<double> &phase, std::vector<double> &delay, const QuantizationSpec &spec,
                           std::optional<double> carrier_hz)
{
    std::size_t clamped = 0;
    for (std::size_t k = 0; k < delay.size(); ++k)
    {
        bool c = false;
        const double q = quantize_delay(delay[k], spec, &c);
        clamped += c ? 1 : 0;
        double p = phase[k];
        if (carrier_hz)
            p += two_pi * *carrier_hz * (delay[k] - q);
        delay[k] = q;
        phase[k] = quantize_phase(p, spec);
    }
    return clamped;
}

} // namespace

Quantized<JptaConfig> quantize(const JptaConfig &config, const QuantizationSpec &spec,
                               std::optional<double> carrier_hz)
{
    spec.validate();
    Quantized<JptaConfig> out{config, 0};
    out.clamped = quantize_pairs(out.config.phase.values(), out.config.delay.values(), spec, carrier_hz);
    return out;
}

Quantized<SeparatedJptaConfig> quantize(const SeparatedJptaConfig &config, const QuantizationSpec &spec,
                                        std::optional<double> carrier_hz)
{
    spec.validate();
    Quantized<SeparatedJptaConfig> out{config, 0};
    out.clamped = quantize_pairs(out.config.phase_az, out.config.delay_az, spec, carrier_hz) +
                  quantize_pairs(out.config.phase_el, out.config.delay_el, spec, carrier_hz);
    return out;
}

} // namespace jpta
