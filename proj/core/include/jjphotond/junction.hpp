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

#pragma once

// Cubic-approximation quantities of a current-biased junction and WKB escape
// rates out of its two lowest levels. SI units throughout this header.

#include "jjphotond/units.hpp"

namespace jjphotond {

struct JunctionBias {
    double current_ratio = 0.0;       ///< I / I0, in [0, 1)
    double critical_current_a = 0.0;  ///< I0
    double capacitance_f = 0.0;       ///< C
};

struct JunctionDerived {
    double barrier_height_j = 0.0;
    double plasma_frequency = 0.0;    ///< rad/s
    double transition_frequency = 0.0;///< rad/s
    double bias_x = 0.0;              ///< dU / (hbar w_p)
    double gamma_g_per_s = 0.0;
    double gamma_e_per_s = 0.0;
};

struct RatePair {
    double gamma_g = 0.0;
    double gamma_e = 0.0;
};

/// Gamma_e at x = 2 used by the anchored rate mode, 1/s.
inline constexpr double anchored_gamma_e_at_2 = 7.3e7;
inline constexpr double anchored_x_min = 1.0;
inline constexpr double anchored_x_max = 4.0;

/// Throws RangeError unless 0 <= I/I0 < 1, I0 > 0, C > 0.
void check_bias(const JunctionBias& bias);

/// dU = 4 I0 Phi0 / (3 sqrt(2) pi) (1 - I/I0)^(3/2)
double barrier_height(const JunctionBias& bias);

/// w_p = 2^(1/4) sqrt(2 pi I0 / (C Phi0)) (1 - I/I0)^(1/4)
double plasma_frequency(const JunctionBias& bias);

/// w_eg = w_p (1 - 5 / (36 x)). Throws RangeError for x <= 5/36.
double transition_frequency(double omega_p, double bias_x);

/// Gamma_j = (w_p / 2pi) (432 x)^(j + 1/2) pi^(-j/2) exp(-36 x / 5), j in {0, 1}.
/// Units follow w_p: rad/s in gives 1/s out.
double tunneling_rate(int level, double bias_x, double omega_p);

RatePair rates_raw(double bias_x, double omega_p);

/// The raw x-dependence rescaled so Gamma_e(2) = 7.3e7 /s exactly; Gamma_g from the
/// fixed ratio Gamma_e / Gamma_g = 432 x / sqrt(pi). Valid for x in [1, 4].
RatePair rates_anchored(double bias_x);

/// Ratio Gamma_e / Gamma_g implied by the WKB formula.
double excited_to_ground_ratio(double bias_x);

JunctionDerived derive(const JunctionBias& bias);

}  // namespace jjphotond
