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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "jjphotond/units.hpp"

namespace jjphotond {

/// Config document as written by the user: external units, one optional per key.
///
/// Recognized keys (flat JSON object):
///   omega_eg_ghz, delta_ghz | delta_over_omega, omega_rabi_mhz, kappa_per_s,
///   gamma_per_s | t1_ns,
///   gamma_g_per_s + gamma_e_per_s | bias_x [+ rate_mode, omega_p_ghz] | i_over_i0 + i0_ua + c_pf,
///   n_init, n_max, t_end_ns, stride_ns, rel_tol, abs_tol, max_step_ns, frame
struct RawConfig {
    std::optional<double> omega_eg_ghz;
    std::optional<double> delta_ghz;
    std::optional<double> delta_over_omega;
    std::optional<double> omega_rabi_mhz;
    std::optional<double> kappa_per_s;
    std::optional<double> gamma_per_s;
    std::optional<double> t1_ns;

    std::optional<double> gamma_g_per_s;
    std::optional<double> gamma_e_per_s;
    std::optional<double> bias_x;
    std::optional<std::string> rate_mode;
    std::optional<double> omega_p_ghz;
    std::optional<double> i_over_i0;
    std::optional<double> i0_ua;
    std::optional<double> c_pf;

    std::optional<long long> n_init;
    std::optional<long long> n_max;
    std::optional<double> t_end_ns;
    std::optional<double> stride_ns;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> max_step_ns;
    std::optional<std::string> frame;
};

/// Parses a JSON config document. Unknown keys and wrongly typed values are ConfigErrors.
RawConfig parse_config(std::string_view json_text);
RawConfig load_config_file(const std::filesystem::path& path);

/// Converts to internal units and fills defaults (n_max = n_init, t_end = 200 ns,
/// stride = 0.05 ns, frame = rotating-secular, rate_mode = anchored).
/// Throws ConfigError for missing/conflicting keys and RangeError for out-of-range values.
SimParams validate(const RawConfig& raw);

/// Reference operating point: w_eg/2pi = 4.8 GHz, gamma = 1e8 /s, kappa = 1e6 /s,
/// Omega/2pi = 200 MHz, x = 2 with anchored rates, zero detuning, one photon.
RawConfig baseline_config();
SimParams baseline_preset();

/// External representation of already-validated parameters (explicit rates).
std::string to_config_json(const SimParams& params);

}  // namespace jjphotond
