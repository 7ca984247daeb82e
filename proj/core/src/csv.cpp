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

#include "jjphotond/csv.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace jjphotond::csv {

namespace {

// Probabilities a hair outside [0, 1] are reported as the bound.
double clamp_probability(double p) {
    if (p < 0.0 && p > -1e-9) {
        return 0.0;
    }
    if (p > 1.0 && p < 1.0 + 1e-9) {
        return 1.0;
    }
    return p;
}

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (const double v : values) {
        if (!first) {
            out += ',';
        }
        out += format_number(v);
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string efficiency(const EfficiencyCurve& curve) {
    std::string out = "t_ns,P_n,P_0,eta\n";
    for (std::size_t k = 0; k < curve.times.size(); ++k) {
        append_row(out, {curve.times[k], clamp_probability(curve.p_n[k]),
                         clamp_probability(curve.p_0[k]), curve.eta[k]});
    }
    return out;
}

std::string bandwidth_scan(std::span<const BandwidthScanPoint> scan) {
    std::string out = "delta_over_omega,eta_at_td\n";
    for (const auto& point : scan) {
        append_row(out, {point.delta_over_omega, point.eta});
    }
    return out;
}

std::string sweep(const SweepResult& result) {
    std::string out(to_string(result.axis.parameter));
    out += ",t_d_ns,eta_max\n";
    for (const auto& point : result.points) {
        const double nan = std::nan("");
        append_row(out, {point.value, point.ok() ? point.optimum->t_d : nan,
                         point.ok() ? point.optimum->eta_max : nan});
    }
    return out;
}

std::string series(std::string_view x_name, std::string_view y_name, std::span<const double> xs,
                   std::span<const double> ys) {
    std::string out;
    out += x_name;
    out += ',';
    out += y_name;
    out += '\n';
    for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k) {
        append_row(out, {xs[k], ys[k]});
    }
    return out;
}

}  // namespace jjphotond::csv
