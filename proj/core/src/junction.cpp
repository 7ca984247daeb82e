// Copyright 2026 The jjphotond Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jjphotond/junction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jjphotond/errors.hpp"

namespace jjphotond {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw RangeError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

void check_bias(const JunctionBias& bias) {
    if (!(bias.current_ratio >= 0.0 && bias.current_ratio < 1.0)) {
        throw RangeError("bias current ratio I/I0 must lie in [0, 1), got " +
                         std::to_string(bias.current_ratio));
    }
    require_positive(bias.critical_current_a, "critical current I0");
    require_positive(bias.capacitance_f, "junction capacitance C");
}

double barrier_height(const JunctionBias& bias) {
    check_bias(bias);
    const double prefactor = 4.0 * bias.critical_current_a * PhysicalConstants::flux_quantum /
                             (3.0 * std::numbers::sqrt2 * pi);
    return prefactor * std::pow(1.0 - bias.current_ratio, 1.5);
}

double plasma_frequency(const JunctionBias& bias) {
    check_bias(bias);
    const double small_signal = std::sqrt(2.0 * pi * bias.critical_current_a /
                                          (bias.capacitance_f * PhysicalConstants::flux_quantum));
    return std::pow(2.0, 0.25) * small_signal * std::pow(1.0 - bias.current_ratio, 0.25);
}

double transition_frequency(double omega_p, double bias_x) {
    if (!(bias_x > 5.0 / 36.0)) {
        throw RangeError("transition frequency undefined for x <= 5/36 (got x = " +
                         std::to_string(bias_x) + ")");
    }
    return omega_p * (1.0 - 5.0 / (36.0 * bias_x));
}

double tunneling_rate(int level, double bias_x, double omega_p) {
    if (level != 0 && level != 1) {
        throw RangeError("tunneling rate is defined for levels 0 and 1 only");
    }
    require_positive(bias_x, "barrier ratio x");
    require_positive(omega_p, "plasma frequency");
    const double j = static_cast<double>(level);
    return omega_p / (2.0 * pi) * std::pow(432.0 * bias_x, j + 0.5) * std::pow(pi, -0.5 * j) *
           std::exp(-36.0 * bias_x / 5.0);
}

RatePair rates_raw(double bias_x, double omega_p) {
    return {tunneling_rate(0, bias_x, omega_p), tunneling_rate(1, bias_x, omega_p)};
}

double excited_to_ground_ratio(double bias_x) {
    return 432.0 * bias_x / std::sqrt(pi);
}

RatePair rates_anchored(double bias_x) {
    if (!(bias_x >= anchored_x_min && bias_x <= anchored_x_max)) {
        throw RangeError("anchored rates are calibrated for x in [1, 4], got x = " +
                         std::to_string(bias_x));
    }
    const double gamma_e = anchored_gamma_e_at_2 * std::pow(bias_x / 2.0, 1.5) *
                           std::exp(-36.0 * (bias_x - 2.0) / 5.0);
    return {gamma_e / excited_to_ground_ratio(bias_x), gamma_e};
}

JunctionDerived derive(const JunctionBias& bias) {
    JunctionDerived out;
    out.barrier_height_j = barrier_height(bias);
    out.plasma_frequency = plasma_frequency(bias);
    out.bias_x = out.barrier_height_j / (PhysicalConstants::hbar * out.plasma_frequency);
    out.transition_frequency = transition_frequency(out.plasma_frequency, out.bias_x);
    const RatePair rates = rates_raw(out.bias_x, out.plasma_frequency);
    out.gamma_g_per_s = rates.gamma_g;
    out.gamma_e_per_s = rates.gamma_e;
    return out;
}

}  // namespace jjphotond
