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

// CSV output: header row, '.' decimal separator, 17 significant digits, LF endings.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jjphotond/metrics.hpp"
#include "jjphotond/sweep.hpp"

namespace jjphotond::csv {

std::string format_number(double value);

/// Columns t_ns,P_n,P_0,eta
std::string efficiency(const EfficiencyCurve& curve);

/// Columns delta_over_omega,eta_at_td
std::string bandwidth_scan(std::span<const BandwidthScanPoint> scan);

/// Columns <param>,t_d_ns,eta_max; failed points are written as nan.
std::string sweep(const SweepResult& result);

/// Two-column series with the given header names.
std::string series(std::string_view x_name, std::string_view y_name, std::span<const double> xs,
                   std::span<const double> ys);

}  // namespace jjphotond::csv
