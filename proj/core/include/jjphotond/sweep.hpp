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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jjphotond/metrics.hpp"

namespace jjphotond {

enum class SweepParameter { t1_ns, bias_x, delta_over_omega, n_init };

std::string_view to_string(SweepParameter parameter);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepAxis {
    SweepParameter parameter = SweepParameter::t1_ns;
    std::vector<double> values;
};

struct SweepPoint {
    double value = 0.0;
    std::optional<OptimalPoint> optimum;
    std::optional<EfficiencyCurve> curve;
    std::string error;

    bool ok() const { return optimum.has_value(); }
};

struct SweepResult {
    SweepAxis axis;
    std::vector<SweepPoint> points;  ///< same order as axis.values

    bool all_ok() const;
};

struct SweepOptions {
    unsigned workers = 1;
    bool keep_curves = false;
};

/// Template parameters with one axis value substituted. Bias sweeps re-derive
/// Gamma_g, Gamma_e through the template's rate origin. Throws ConfigError/RangeError.
SimParams apply_axis_value(const SimParams& base, SweepParameter parameter, double value);

/// Runs efficiency_curve + optimal_detection per value on `workers` threads.
/// Failures are recorded per point; the output does not depend on the worker count.
SweepResult sweep(const SimParams& base, const SweepAxis& axis, const SweepOptions& options = {});

}  // namespace jjphotond
