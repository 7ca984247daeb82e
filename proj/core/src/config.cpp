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

#include "jjphotond/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jjphotond/errors.hpp"
#include "jjphotond/junction.hpp"

namespace jjphotond {

namespace {

using nlohmann::json;

/// External value whose forward conversion lands exactly on `internal`, so that
/// parsing the emitted document reproduces the same doubles.
template <class Forward, class Backward>
double external_value(double internal, Forward forward, Backward backward) {
    const double guess = backward(internal);
    double up = guess;
    double down = guess;
    for (int step = 0; step < 8; ++step) {
        if (forward(up) == internal) {
            return up;
        }
        if (forward(down) == internal) {
            return down;
        }
        up = std::nextafter(up, HUGE_VAL);
        down = std::nextafter(down, -HUGE_VAL);
    }
    return guess;
}

double ghz_of(double w) { return external_value(w, ghz_to_rad_per_ns, rad_per_ns_to_ghz); }
double mhz_of(double w) { return external_value(w, mhz_to_rad_per_ns, rad_per_ns_to_mhz); }
double per_s_of(double r) {
    return external_value(r, seconds_rate_to_internal, internal_rate_to_seconds);
}

std::string join(const std::vector<std::string>& keys, const char* sep = ", ") {
    std::string out;
    for (const auto& key : keys) {
        if (!out.empty()) {
            out += sep;
        }
        out += key;
    }
    return out;
}

void read_number(const json& doc, const char* key, std::optional<double>& field) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    if (!it->is_number()) {
        throw ConfigError(std::string("config key '") + key + "' must be a number", {key});
    }
    field = it->get<double>();
}

void read_integer(const json& doc, const char* key, std::optional<long long>& field) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    if (!it->is_number_integer()) {
        throw ConfigError(std::string("config key '") + key + "' must be an integer", {key});
    }
    field = it->get<long long>();
}

void read_string(const json& doc, const char* key, std::optional<std::string>& field) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    if (!it->is_string()) {
        throw ConfigError(std::string("config key '") + key + "' must be a string", {key});
    }
    field = it->get<std::string>();
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "omega_eg_ghz", "delta_ghz",     "delta_over_omega", "omega_rabi_mhz", "kappa_per_s",
        "gamma_per_s",  "t1_ns",         "gamma_g_per_s",    "gamma_e_per_s",  "bias_x",
        "rate_mode",    "omega_p_ghz",   "i_over_i0",        "i0_ua",          "c_pf",
        "n_init",       "n_max",         "t_end_ns",         "stride_ns",      "rel_tol",
        "abs_tol",      "max_step_ns",   "frame"};
    return keys;
}

void require_nonnegative_rate(double value, const char* key) {
    if (!std::isfinite(value) || value < 0.0) {
        throw RangeError(std::string("'") + key + "' must be a finite rate >= 0, got " +
                         std::to_string(value));
    }
}

void require_positive(double value, const char* key) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw RangeError(std::string("'") + key + "' must be finite and > 0, got " +
                         std::to_string(value));
    }
}

template <class... Fields>
std::vector<std::string> present(const std::pair<const char*, const Fields&>&... fields) {
    std::vector<std::string> keys;
    (
        [&](const auto& field) {
            if (field.second.has_value()) {
                keys.emplace_back(field.first);
            }
        }(fields),
        ...);
    return keys;
}

RateMode parse_rate_mode(const std::string& text) {
    if (text == "anchored") {
        return RateMode::anchored;
    }
    if (text == "raw") {
        return RateMode::raw;
    }
    throw ConfigError("rate_mode must be 'raw' or 'anchored', got '" + text + "'", {"rate_mode"});
}

FrameMode parse_frame(const std::string& text) {
    if (text == "rotating-secular") {
        return FrameMode::rotating_secular;
    }
    if (text == "lab-full") {
        return FrameMode::lab_full;
    }
    throw ConfigError("frame must be 'rotating-secular' or 'lab-full', got '" + text + "'",
                      {"frame"});
}

void resolve_tunneling(const RawConfig& raw, SimParams& out) {
    using P = std::pair<const char*, const std::optional<double>&>;
    using S = std::pair<const char*, const std::optional<std::string>&>;
    const auto explicit_keys =
        present(P{"gamma_g_per_s", raw.gamma_g_per_s}, P{"gamma_e_per_s", raw.gamma_e_per_s});
    const auto bias_keys = present(P{"bias_x", raw.bias_x}, S{"rate_mode", raw.rate_mode},
                                   P{"omega_p_ghz", raw.omega_p_ghz});
    const auto physical_keys =
        present(P{"i_over_i0", raw.i_over_i0}, P{"i0_ua", raw.i0_ua}, P{"c_pf", raw.c_pf});

    const int groups = int(!explicit_keys.empty()) + int(!bias_keys.empty()) +
                       int(!physical_keys.empty());
    if (groups == 0) {
        throw ConfigError(
            "missing tunneling spec: provide exactly one of {gamma_g_per_s, gamma_e_per_s}, "
            "{bias_x, rate_mode}, or {i_over_i0, i0_ua, c_pf}",
            {"gamma_g_per_s", "gamma_e_per_s", "bias_x", "rate_mode", "i_over_i0", "i0_ua",
             "c_pf"});
    }
    if (groups > 1) {
        std::vector<std::string> offending = explicit_keys;
        offending.insert(offending.end(), bias_keys.begin(), bias_keys.end());
        offending.insert(offending.end(), physical_keys.begin(), physical_keys.end());
        throw ConfigError("conflicting tunneling specs: " + join(offending), offending);
    }

    if (!explicit_keys.empty()) {
        if (!raw.gamma_g_per_s || !raw.gamma_e_per_s) {
            throw ConfigError("explicit tunneling rates need both gamma_g_per_s and gamma_e_per_s",
                              {"gamma_g_per_s", "gamma_e_per_s"});
        }
        require_nonnegative_rate(*raw.gamma_g_per_s, "gamma_g_per_s");
        require_nonnegative_rate(*raw.gamma_e_per_s, "gamma_e_per_s");
        out.gamma_g = seconds_rate_to_internal(*raw.gamma_g_per_s);
        out.gamma_e = seconds_rate_to_internal(*raw.gamma_e_per_s);
        out.origin = {RateOrigin::Kind::explicit_rates, 0.0, 0.0};
        return;
    }

    if (!bias_keys.empty()) {
        if (!raw.bias_x) {
            throw ConfigError("rate_mode/omega_p_ghz given without bias_x", {"bias_x"});
        }
        const double x = *raw.bias_x;
        require_positive(x, "bias_x");
        const RateMode mode = raw.rate_mode ? parse_rate_mode(*raw.rate_mode) : RateMode::anchored;
        if (mode == RateMode::anchored) {
            if (raw.omega_p_ghz) {
                throw ConfigError("omega_p_ghz only applies to rate_mode 'raw'",
                                  {"omega_p_ghz", "rate_mode"});
            }
            const RatePair rates = rates_anchored(x);
            out.gamma_g = seconds_rate_to_internal(rates.gamma_g);
            out.gamma_e = seconds_rate_to_internal(rates.gamma_e);
            out.origin = {RateOrigin::Kind::bias_anchored, x, 0.0};
        } else {
            // Without an explicit plasma frequency the raw formula is fed w_eg.
            const double omega_p =
                raw.omega_p_ghz ? ghz_to_rad_per_ns(*raw.omega_p_ghz) : out.omega_eg;
            require_positive(omega_p, "omega_p_ghz");
            const RatePair rates = rates_raw(x, rad_per_ns_to_rad_per_s(omega_p));
            out.gamma_g = seconds_rate_to_internal(rates.gamma_g);
            out.gamma_e = seconds_rate_to_internal(rates.gamma_e);
            out.origin = {RateOrigin::Kind::bias_raw, x, omega_p};
        }
        return;
    }

    if (!raw.i_over_i0 || !raw.i0_ua || !raw.c_pf) {
        throw ConfigError("physical bias needs i_over_i0, i0_ua and c_pf together",
                          {"i_over_i0", "i0_ua", "c_pf"});
    }
    const JunctionBias bias{*raw.i_over_i0, *raw.i0_ua * 1e-6, *raw.c_pf * 1e-12};
    const JunctionDerived derived = derive(bias);
    out.omega_eg = rad_per_s_to_rad_per_ns(derived.transition_frequency);
    out.gamma_g = seconds_rate_to_internal(derived.gamma_g_per_s);
    out.gamma_e = seconds_rate_to_internal(derived.gamma_e_per_s);
    out.origin = {RateOrigin::Kind::physical_bias, derived.bias_x,
                  rad_per_s_to_rad_per_ns(derived.plasma_frequency)};
}

}  // namespace

RawConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    const auto& known = known_keys();
    for (const auto& item : doc.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError("unknown config key '" + item.key() + "'", {item.key()});
        }
    }

    RawConfig raw;
    read_number(doc, "omega_eg_ghz", raw.omega_eg_ghz);
    read_number(doc, "delta_ghz", raw.delta_ghz);
    read_number(doc, "delta_over_omega", raw.delta_over_omega);
    read_number(doc, "omega_rabi_mhz", raw.omega_rabi_mhz);
    read_number(doc, "kappa_per_s", raw.kappa_per_s);
    read_number(doc, "gamma_per_s", raw.gamma_per_s);
    read_number(doc, "t1_ns", raw.t1_ns);
    read_number(doc, "gamma_g_per_s", raw.gamma_g_per_s);
    read_number(doc, "gamma_e_per_s", raw.gamma_e_per_s);
    read_number(doc, "bias_x", raw.bias_x);
    read_string(doc, "rate_mode", raw.rate_mode);
    read_number(doc, "omega_p_ghz", raw.omega_p_ghz);
    read_number(doc, "i_over_i0", raw.i_over_i0);
    read_number(doc, "i0_ua", raw.i0_ua);
    read_number(doc, "c_pf", raw.c_pf);
    read_integer(doc, "n_init", raw.n_init);
    read_integer(doc, "n_max", raw.n_max);
    read_number(doc, "t_end_ns", raw.t_end_ns);
    read_number(doc, "stride_ns", raw.stride_ns);
    read_number(doc, "rel_tol", raw.rel_tol);
    read_number(doc, "abs_tol", raw.abs_tol);
    read_number(doc, "max_step_ns", raw.max_step_ns);
    read_string(doc, "frame", raw.frame);
    return raw;
}

RawConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

SimParams validate(const RawConfig& raw) {
    SimParams out;

    if (raw.omega_eg_ghz && raw.i_over_i0) {
        throw ConfigError("omega_eg_ghz conflicts with a physical bias spec, which derives it",
                          {"omega_eg_ghz", "i_over_i0"});
    }
    if (raw.omega_eg_ghz) {
        require_positive(*raw.omega_eg_ghz, "omega_eg_ghz");
        out.omega_eg = ghz_to_rad_per_ns(*raw.omega_eg_ghz);
    } else if (!raw.i_over_i0) {
        throw ConfigError("missing required key omega_eg_ghz", {"omega_eg_ghz"});
    }

    if (!raw.omega_rabi_mhz) {
        throw ConfigError("missing required key omega_rabi_mhz", {"omega_rabi_mhz"});
    }
    require_positive(*raw.omega_rabi_mhz, "omega_rabi_mhz");
    out.omega_rabi = mhz_to_rad_per_ns(*raw.omega_rabi_mhz);

    if (!raw.kappa_per_s) {
        throw ConfigError("missing required key kappa_per_s", {"kappa_per_s"});
    }
    require_nonnegative_rate(*raw.kappa_per_s, "kappa_per_s");
    out.kappa = seconds_rate_to_internal(*raw.kappa_per_s);

    if (!raw.gamma_per_s && !raw.t1_ns) {
        throw ConfigError("missing junction decay: give gamma_per_s or t1_ns",
                          {"gamma_per_s", "t1_ns"});
    }
    if (raw.t1_ns) {
        require_positive(*raw.t1_ns, "t1_ns");
        out.gamma = 1.0 / *raw.t1_ns;
    }
    if (raw.gamma_per_s) {
        require_nonnegative_rate(*raw.gamma_per_s, "gamma_per_s");
        const double gamma = seconds_rate_to_internal(*raw.gamma_per_s);
        if (raw.t1_ns && std::abs(gamma - out.gamma) > 1e-9 * std::max(gamma, out.gamma)) {
            throw ConfigError("gamma_per_s and t1_ns disagree (gamma must equal 1/T1)",
                              {"gamma_per_s", "t1_ns"});
        }
        out.gamma = gamma;
    }

    if (!raw.n_init) {
        throw ConfigError("missing required key n_init", {"n_init"});
    }
    if (*raw.n_init < 0 || *raw.n_init > 1000) {
        throw RangeError("n_init must be in [0, 1000], got " + std::to_string(*raw.n_init));
    }
    out.n_init = static_cast<int>(*raw.n_init);
    out.n_max = out.n_init;
    if (raw.n_max) {
        if (*raw.n_max < *raw.n_init || *raw.n_max > 1000) {
            throw RangeError("n_max must satisfy n_init <= n_max <= 1000, got " +
                             std::to_string(*raw.n_max));
        }
        out.n_max = static_cast<int>(*raw.n_max);
    }

    out.frame = raw.frame ? parse_frame(*raw.frame) : FrameMode::rotating_secular;

    out.grid.t_end_ns = raw.t_end_ns.value_or(200.0);
    out.grid.stride_ns = raw.stride_ns.value_or(0.05);
    require_positive(out.grid.t_end_ns, "t_end_ns");
    require_positive(out.grid.stride_ns, "stride_ns");
    if (out.grid.stride_ns > out.grid.t_end_ns) {
        throw RangeError("stride_ns must not exceed t_end_ns");
    }

    out.tol.rel = raw.rel_tol.value_or(1e-9);
    out.tol.abs = raw.abs_tol.value_or(1e-12);
    require_positive(out.tol.rel, "rel_tol");
    require_positive(out.tol.abs, "abs_tol");
    out.tol.max_step_ns = raw.max_step_ns.value_or(out.frame == FrameMode::lab_full ? 1e-3 : 0.0);
    if (out.tol.max_step_ns < 0.0 || !std::isfinite(out.tol.max_step_ns)) {
        throw RangeError("max_step_ns must be >= 0");
    }

    // Tunneling before detuning: a physical bias spec supplies w_eg.
    resolve_tunneling(raw, out);

    if (raw.delta_ghz && raw.delta_over_omega) {
        throw ConfigError("give either delta_ghz or delta_over_omega, not both",
                          {"delta_ghz", "delta_over_omega"});
    }
    if (raw.delta_ghz) {
        out.delta = ghz_to_rad_per_ns(*raw.delta_ghz);
    } else if (raw.delta_over_omega) {
        out.delta = *raw.delta_over_omega * out.omega_rabi;
    }
    if (!std::isfinite(out.delta)) {
        throw RangeError("detuning must be finite");
    }
    return out;
}

RawConfig baseline_config() {
    RawConfig raw;
    raw.omega_eg_ghz = 4.8;
    raw.delta_ghz = 0.0;
    raw.omega_rabi_mhz = 200.0;
    raw.kappa_per_s = 1e6;
    raw.gamma_per_s = 1e8;
    raw.bias_x = 2.0;
    raw.rate_mode = "anchored";
    raw.n_init = 1;
    return raw;
}

SimParams baseline_preset() { return validate(baseline_config()); }

std::string to_config_json(const SimParams& params) {
    json doc;
    if (params.origin.kind != RateOrigin::Kind::physical_bias) {
        doc["omega_eg_ghz"] = ghz_of(params.omega_eg);
    }
    doc["delta_ghz"] = ghz_of(params.delta);
    doc["omega_rabi_mhz"] = mhz_of(params.omega_rabi);
    doc["kappa_per_s"] = per_s_of(params.kappa);
    doc["gamma_per_s"] = per_s_of(params.gamma);
    switch (params.origin.kind) {
    case RateOrigin::Kind::bias_anchored:
        doc["bias_x"] = params.origin.bias_x;
        doc["rate_mode"] = "anchored";
        break;
    case RateOrigin::Kind::bias_raw:
        doc["bias_x"] = params.origin.bias_x;
        doc["rate_mode"] = "raw";
        doc["omega_p_ghz"] = ghz_of(params.origin.omega_p);
        break;
    case RateOrigin::Kind::physical_bias:
        doc["omega_eg_ghz"] = ghz_of(params.omega_eg);
        [[fallthrough]];
    case RateOrigin::Kind::explicit_rates:
        doc["gamma_g_per_s"] = per_s_of(params.gamma_g);
        doc["gamma_e_per_s"] = per_s_of(params.gamma_e);
        break;
    }
    doc["n_init"] = params.n_init;
    doc["n_max"] = params.n_max;
    doc["t_end_ns"] = params.grid.t_end_ns;
    doc["stride_ns"] = params.grid.stride_ns;
    doc["rel_tol"] = params.tol.rel;
    doc["abs_tol"] = params.tol.abs;
    doc["max_step_ns"] = params.tol.max_step_ns;
    doc["frame"] = to_string(params.frame);
    return doc.dump(2);
}

}  // namespace jjphotond
