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

#ifndef JPTA_QUANTIZE_HPP
#define JPTA_QUANTIZE_HPP

#include "jpta/types.hpp"

#include <cstddef>
#include <optional>

namespace jpta
{

// Hardware resolution: delays on {0, tau_step, ..., tau_max}, phases on 2^phase_bits
// uniformly spaced points of [0, 2*pi).
struct QuantizationSpec
{
    double tau_step = 2.5e-9;
    double tau_max = 200e-9;
    int phase_bits = 6;

    void validate() const;
    double phase_step() const { return two_pi / static_cast<double>(1L << phase_bits); }
    std::size_t delay_levels() const;
};

// Nearest delay grid point; ties round up, out-of-range values clamp.
double quantize_delay(double delay, const QuantizationSpec &spec, bool *clamped = nullptr);

// Nearest phase grid point under the circular metric; ties round up.
double quantize_phase(double phase, const QuantizationSpec &spec);

template <typename Config>
struct Quantized
{
    Config config;
    // Number of delays that fell outside [0, tau_max] and were clamped.
    std::size_t clamped = 0;
};

// Rounds every delay and phase to the grids. When carrier_hz is given, the
// delay rounding error d is first folded into the phase as 2*pi*f_c*d so the
// carrier-frequency response of each element is preserved before the phase is
// rounded; without it both variables round independently.
Quantized<JptaConfig> quantize(const JptaConfig &config, const QuantizationSpec &spec,
                               std::optional<double> carrier_hz = std::nullopt);
Quantized<SeparatedJptaConfig> quantize(const SeparatedJptaConfig &config, const QuantizationSpec &spec,
                                        std::optional<double> carrier_hz = std::nullopt);

} // namespace jpta

#endif
