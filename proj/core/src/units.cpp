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

#include "jjphotond/units.hpp"

#include <cmath>

namespace jjphotond {

const char* to_string(RateMode mode) {
    switch (mode) {
    case RateMode::raw:
        return "raw";
    case RateMode::anchored:
        return "anchored";
    }
    return "?";
}

const char* to_string(FrameMode mode) {
    switch (mode) {
    case FrameMode::rotating_secular:
        return "rotating-secular";
    case FrameMode::lab_full:
        return "lab-full";
    }
    return "?";
}

const char* to_string(RateOrigin::Kind kind) {
    switch (kind) {
    case RateOrigin::Kind::explicit_rates:
        return "explicit";
    case RateOrigin::Kind::bias_anchored:
        return "bias-anchored";
    case RateOrigin::Kind::bias_raw:
        return "bias-raw";
    case RateOrigin::Kind::physical_bias:
        return "physical-bias";
    }
    return "?";
}

std::size_t TimeGrid::count() const {
    if (!(stride_ns > 0.0) || !(t_end_ns >= 0.0)) {
        return 0;
    }
    // Tolerate t_end landing a few ulps short of a stride multiple.
    const double steps = std::floor(t_end_ns / stride_ns * (1.0 + 1e-12));
    return static_cast<std::size_t>(steps) + 1;
}

}  // namespace jjphotond
