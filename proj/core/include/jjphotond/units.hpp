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

// Internal units: time in ns, angular frequencies in rad/ns, rates in 1/ns.
// External quantities stay in GHz / MHz / ns / 1/s.

#include <cstddef>
#include <numbers>

namespace jjphotond {

struct PhysicalConstants {
    /// h / 2e in Wb.
    static constexpr double flux_quantum = 2.067833848e-15;
    /// J s
    static constexpr double hbar = 1.054571817e-34;
};

constexpr double two_pi = 2.0 * std::numbers::pi;

/// 1/s -> 1/ns. Division by the exactly representable 1e9 keeps powers of ten exact.
constexpr double seconds_rate_to_internal(double per_second) { return per_second / 1e9; }
constexpr double internal_rate_to_seconds(double per_ns) { return per_ns * 1e9; }

constexpr double ghz_to_rad_per_ns(double ghz) { return two_pi * ghz; }
constexpr double mhz_to_rad_per_ns(double mhz) { return two_pi * mhz / 1e3; }
constexpr double rad_per_ns_to_ghz(double w) { return w / two_pi; }
constexpr double rad_per_ns_to_mhz(double w) { return w / two_pi * 1e3; }

constexpr double rad_per_s_to_rad_per_ns(double w) { return w / 1e9; }
constexpr double rad_per_ns_to_rad_per_s(double w) { return w * 1e9; }

enum class RateMode { raw, anchored };
enum class FrameMode { rotating_secular, lab_full };

const char* to_string(RateMode mode);
const char* to_string(FrameMode mode);

/// Uniform output grid t_k = k * stride, k = 0..count()-1, last point <= t_end.
struct TimeGrid {
    double t_end_ns = 200.0;
    double stride_ns = 0.05;

    std::size_t count() const;
    double time(std::size_t k) const { return static_cast<double>(k) * stride_ns; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
    /// Upper bound on the integrator step in ns; 0 means unbounded.
    double max_step_ns = 0.0;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// Where the tunneling rates in a SimParams came from; needed to re-derive them in bias sweeps.
struct RateOrigin {
    enum class Kind { explicit_rates, bias_anchored, bias_raw, physical_bias };
    Kind kind = Kind::explicit_rates;
    /// Dimensionless barrier x = dU / (hbar w_p); 0 when not applicable.
    double bias_x = 0.0;
    /// Plasma frequency used by the raw WKB formula, rad/ns; 0 when not applicable.
    double omega_p = 0.0;

    friend bool operator==(const RateOrigin&, const RateOrigin&) = default;
};

const char* to_string(RateOrigin::Kind kind);

/// Validated master-equation parameters in internal units. Immutable once built.
struct SimParams {
    double omega_eg = 0.0;    ///< junction transition frequency, rad/ns
    double delta = 0.0;       ///< w_r - w_eg, rad/ns
    double omega_rabi = 0.0;  ///< vacuum Rabi frequency, rad/ns
    double kappa = 0.0;       ///< cavity decay, 1/ns
    double gamma = 0.0;       ///< junction relaxation, 1/ns
    double gamma_g = 0.0;     ///< tunneling out of |g>, 1/ns
    double gamma_e = 0.0;     ///< tunneling out of |e>, 1/ns
    int n_init = 0;
    int n_max = 0;
    FrameMode frame = FrameMode::rotating_secular;
    TimeGrid grid;
    Tolerances tol;
    RateOrigin origin;

    double omega_r() const { return omega_eg + delta; }

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

}  // namespace jjphotond
