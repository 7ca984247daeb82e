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

#include "jjphotond/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jjphotond/liouvillian.hpp"

namespace jjphotond {

namespace {

struct PreparedModel {
    HilbertSpace space;
    Liouvillian liouvillian;
};

PreparedModel prepare(const SimParams& params, int photons) {
    if (photons < 0) {
        throw RangeError("photon number must be >= 0");
    }
    HilbertSpace space(std::max(params.n_max, photons));
    Liouvillian liouvillian = assemble(params, space);
    return {space, std::move(liouvillian)};
}

}  // namespace

double switching_probability(const CMatrix& rho) { return 1.0 - trace_real(rho); }

std::vector<double> switching_probability(const Trajectory& trajectory) {
    std::vector<double> out;
    out.reserve(trajectory.states.size());
    for (const auto& rho : trajectory.states) {
        out.push_back(switching_probability(rho));
    }
    return out;
}

EfficiencyCurve efficiency_curve(const SimParams& params, int photons) {
    const PreparedModel model = prepare(params, photons);
    const CMatrix loaded = pure_state(model.space, JunctionLevel::ground, photons);
    const CMatrix dark = pure_state(model.space, JunctionLevel::ground, 0);

    const Trajectory with_photons = evolve(model.liouvillian, loaded, params.grid, params.tol);
    const Trajectory without = evolve(model.liouvillian, dark, params.grid, params.tol);

    EfficiencyCurve curve;
    curve.times = with_photons.times;
    curve.p_n = switching_probability(with_photons);
    curve.p_0 = switching_probability(without);
    curve.eta.resize(curve.times.size());
    for (std::size_t k = 0; k < curve.eta.size(); ++k) {
        curve.eta[k] = curve.p_n[k] - curve.p_0[k];
    }
    curve.n_init = photons;
    curve.params = params;
    curve.stats = with_photons.stats;
    curve.stats.merge(without.stats);
    return curve;
}

OptimalPoint optimal_detection(std::span<const double> times, std::span<const double> eta) {
    if (times.empty() || times.size() != eta.size()) {
        throw RangeError("optimal_detection needs a nonempty curve with matching time axis");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < eta.size(); ++k) {
        if (eta[k] > eta[best]) {
            best = k;
        }
    }
    if (!(eta[best] > 0.0)) {
        return {0.0, 0.0, 0, true};
    }

    OptimalPoint out{times[best], eta[best], best, false};
    if (best == 0 || best + 1 == eta.size()) {
        return out;
    }
    // Parabola y = y1 + b u + a u^2 in u = t - t_best through the two neighbours.
    const double h_left = times[best] - times[best - 1];
    const double h_right = times[best + 1] - times[best];
    const double rise_left = (eta[best - 1] - eta[best]) / h_left;
    const double rise_right = (eta[best + 1] - eta[best]) / h_right;
    const double a = (rise_left + rise_right) / (h_left + h_right);
    if (!(a < 0.0)) {
        return out;
    }
    const double b = rise_right - a * h_right;
    const double shift = std::clamp(-b / (2.0 * a), -h_left, h_right);
    out.t_d = times[best] + shift;
    out.eta_max = eta[best] + b * shift + a * shift * shift;
    return out;
}

OptimalPoint optimal_detection(const EfficiencyCurve& curve) {
    return optimal_detection(curve.times, curve.eta);
}

double plateau_estimate(const SimParams& params) {
    const double total = params.gamma_e + params.gamma;
    if (!(total > 0.0)) {
        throw RangeError("plateau estimate undefined when Gamma_e = gamma = 0");
    }
    return params.gamma_e / total;
}

double efficiency_at(const SimParams& params, int photons, double t_ns) {
    const PreparedModel model = prepare(params, photons);
    const CMatrix loaded = pure_state(model.space, JunctionLevel::ground, photons);
    const CMatrix dark = pure_state(model.space, JunctionLevel::ground, 0);
    const double p_n = switching_probability(evolve_to(model.liouvillian, loaded, t_ns, params.tol));
    const double p_0 = switching_probability(evolve_to(model.liouvillian, dark, t_ns, params.tol));
    return p_n - p_0;
}

BandwidthResult half_efficiency_width(const std::function<double(double delta)>& eta_of_delta,
                                      double omega, double scan_step) {
    if (!(omega > 0.0) || !(scan_step > 0.0) || scan_step > bandwidth_scan_limit) {
        throw RangeError("bandwidth scan needs omega > 0 and 0 < step <= 4");
    }
    const auto steps = static_cast<long>(std::llround(bandwidth_scan_limit / scan_step));

    BandwidthResult out;
    out.scan_step_over_omega = scan_step;
    out.scan.reserve(static_cast<std::size_t>(2 * steps + 1));
    for (long k = -steps; k <= steps; ++k) {
        const double ratio = static_cast<double>(k) * scan_step;
        out.scan.push_back({ratio, eta_of_delta(ratio * omega)});
    }
    const auto at = [&](long k) -> const BandwidthScanPoint& {
        return out.scan[static_cast<std::size_t>(k + steps)];
    };

    out.eta_zero = at(0).eta;
    if (!(out.eta_zero > 0.0)) {
        throw BandwidthRangeError("zero-detuning efficiency is not positive", out.scan);
    }
    const double half = 0.5 * out.eta_zero;

    const auto crossing = [&](int direction) {
        long outer = 0;
        for (long k = 1; k <= steps; ++k) {
            if (at(direction * k).eta <= half) {
                outer = k;
                break;
            }
        }
        if (outer == 0) {
            throw BandwidthRangeError(
                "efficiency never drops to half its zero-detuning value within |Delta| <= 4 Omega",
                out.scan);
        }
        // Invariant: eta(inside) > half >= eta(outside).
        double inside = at(direction * (outer - 1)).delta_over_omega * omega;
        double outside = at(direction * outer).delta_over_omega * omega;
        double value = at(direction * outer).eta;
        double point = outside;
        for (int iter = 0; iter < 200; ++iter) {
            if (std::abs(outside - inside) < 1e-8 * omega &&
                std::abs(value - half) < bandwidth_eta_tolerance) {
                break;
            }
            point = 0.5 * (inside + outside);
            value = eta_of_delta(point);
            if (value > half) {
                inside = point;
            } else {
                outside = point;
            }
        }
        return point;
    };

    out.delta_plus = crossing(+1);
    out.delta_minus = crossing(-1);
    out.width_over_omega = (out.delta_plus - out.delta_minus) / omega;
    return out;
}

BandwidthResult bandwidth(const SimParams& params, double t_d, double scan_step) {
    const auto eta_of_delta = [&](double delta) {
        SimParams detuned = params;
        detuned.delta = delta;
        return efficiency_at(detuned, params.n_init, t_d);
    };
    BandwidthResult out = half_efficiency_width(eta_of_delta, params.omega_rabi, scan_step);
    out.t_d = t_d;
    return out;
}

}  // namespace jjphotond
