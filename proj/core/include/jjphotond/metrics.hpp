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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jjphotond/errors.hpp"
#include "jjphotond/propagation.hpp"
#include "jjphotond/units.hpp"

namespace jjphotond {

/// P(t_k) = 1 - Tr rho(t_k); values within 1e-9 outside [0, 1] are clamped.
std::vector<double> switching_probability(const Trajectory& trajectory);
double switching_probability(const CMatrix& rho);

struct EfficiencyCurve {
    std::vector<double> times;
    std::vector<double> p_n;
    std::vector<double> p_0;
    std::vector<double> eta;
    int n_init = 0;
    SimParams params;
    StepStats stats;
};

/// Evolves |n,g> and |0,g> with identical parameters and grid; eta = P_n - P_0.
EfficiencyCurve efficiency_curve(const SimParams& params, int photons);

struct OptimalPoint {
    double t_d = 0.0;
    double eta_max = 0.0;
    std::size_t grid_index = 0;
    /// No positive efficiency anywhere on the curve.
    bool degenerate = false;
};

/// Grid argmax (earliest on ties) refined by a parabola through the argmax and its
/// two neighbours; the refined time stays within one stride of the grid point.
OptimalPoint optimal_detection(std::span<const double> times, std::span<const double> eta);
OptimalPoint optimal_detection(const EfficiencyCurve& curve);

/// Gamma_e / (Gamma_e + gamma). Throws RangeError if both vanish.
double plateau_estimate(const SimParams& params);

/// eta_n(t) at a single time for the given parameters.
double efficiency_at(const SimParams& params, int photons, double t_ns);

struct BandwidthScanPoint {
    double delta_over_omega = 0.0;
    double eta = 0.0;
};

struct BandwidthResult {
    double t_d = 0.0;
    double eta_zero = 0.0;
    double delta_minus = 0.0;  ///< rad/ns, < 0
    double delta_plus = 0.0;   ///< rad/ns, > 0
    double width_over_omega = 0.0;
    double scan_step_over_omega = 0.1;
    std::vector<BandwidthScanPoint> scan;
};

class BandwidthRangeError : public RangeError {
public:
    BandwidthRangeError(const std::string& what, std::vector<BandwidthScanPoint> scan)
        : RangeError(what), scan_(std::move(scan)) {}
    const std::vector<BandwidthScanPoint>& scan() const noexcept { return scan_; }

private:
    std::vector<BandwidthScanPoint> scan_;
};

inline constexpr double bandwidth_scan_limit = 4.0;   ///< |Delta| / Omega
inline constexpr double bandwidth_eta_tolerance = 1e-4;

/// Half-efficiency crossings of an arbitrary eta(Delta). The scan runs over
/// [-4 Omega, 4 Omega] in steps of `scan_step` Omega, then each bracketing
/// interval is bisected.
BandwidthResult half_efficiency_width(const std::function<double(double delta)>& eta_of_delta,
                                      double omega, double scan_step = 0.1);

/// Full width in detuning over which eta_{n_init}(t_d) stays above half of its
/// zero-detuning value. t_d is held fixed while the cavity frequency moves.
BandwidthResult bandwidth(const SimParams& params, double t_d, double scan_step = 0.1);

}  // namespace jjphotond
