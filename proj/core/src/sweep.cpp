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

#include "jjphotond/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "jjphotond/junction.hpp"

namespace jjphotond {

std::string_view to_string(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::t1_ns:
        return "t1_ns";
    case SweepParameter::bias_x:
        return "bias_x";
    case SweepParameter::delta_over_omega:
        return "delta_over_omega";
    case SweepParameter::n_init:
        return "n_init";
    }
    return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
    for (auto p : {SweepParameter::t1_ns, SweepParameter::bias_x, SweepParameter::delta_over_omega,
                   SweepParameter::n_init}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    return std::nullopt;
}

bool SweepResult::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok(); });
}

SimParams apply_axis_value(const SimParams& base, SweepParameter parameter, double value) {
    if (!std::isfinite(value)) {
        throw RangeError("sweep values must be finite");
    }
    SimParams out = base;
    switch (parameter) {
    case SweepParameter::t1_ns:
        if (!(value > 0.0)) {
            throw RangeError("T1 must be > 0 ns");
        }
        out.gamma = 1.0 / value;
        break;
    case SweepParameter::bias_x: {
        RatePair rates;
        if (base.origin.kind == RateOrigin::Kind::bias_anchored) {
            rates = rates_anchored(value);
        } else if (base.origin.kind == RateOrigin::Kind::bias_raw) {
            rates = rates_raw(value, rad_per_ns_to_rad_per_s(base.origin.omega_p));
        } else {
            throw ConfigError("bias_x sweeps need rates derived from bias_x (rate_mode raw|anchored)",
                              {"bias_x", "rate_mode"});
        }
        // w_eg stays put; only the escape rates follow the barrier.
        out.gamma_g = seconds_rate_to_internal(rates.gamma_g);
        out.gamma_e = seconds_rate_to_internal(rates.gamma_e);
        out.origin.bias_x = value;
        break;
    }
    case SweepParameter::delta_over_omega:
        out.delta = value * base.omega_rabi;
        break;
    case SweepParameter::n_init:
        if (value < 0.0 || value != std::floor(value) || value > 1000.0) {
            throw RangeError("n_init sweep values must be integers in [0, 1000]");
        }
        out.n_init = static_cast<int>(value);
        out.n_max = std::max(base.n_max, out.n_init);
        break;
    }
    return out;
}

SweepResult sweep(const SimParams& base, const SweepAxis& axis, const SweepOptions& options) {
    SweepResult result;
    result.axis = axis;
    result.points.resize(axis.values.size());

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < axis.values.size(); i = next.fetch_add(1)) {
            SweepPoint& point = result.points[i];
            point.value = axis.values[i];
            try {
                const SimParams params = apply_axis_value(base, axis.parameter, point.value);
                EfficiencyCurve curve = efficiency_curve(params, params.n_init);
                point.optimum = optimal_detection(curve);
                if (options.keep_curves) {
                    point.curve = std::move(curve);
                }
            } catch (const std::exception& e) {
                point.error = e.what();
            }
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, axis.values.size()));
    if (workers == 1) {
        work();
        return result;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return result;
}

}  // namespace jjphotond
