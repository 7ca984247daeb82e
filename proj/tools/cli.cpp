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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "jjphotond/config.hpp"
#include "jjphotond/csv.hpp"
#include "jjphotond/errors.hpp"
#include "jjphotond/junction.hpp"
#include "jjphotond/metrics.hpp"
#include "jjphotond/sweep.hpp"

namespace jjphotond::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
    std::string config;
    std::string out_dir = ".";
    std::string mode;
    std::string frame;
    unsigned workers = 0;
    double stride_ns = 0.0;
    double t_end_ns = 0.0;
    bool workers_set = false;
    bool stride_set = false;
    bool t_end_set = false;
};

/// Sweep and figure exit status escalates from these.
class PartialSweepError : public Error {
public:
    using Error::Error;
};

struct OutputFile {
    std::string name;
    std::string content;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned resolve_workers(const CommonOptions& options) {
    if (options.workers_set) {
        return std::max(1u, options.workers);
    }
    if (const char* env = std::getenv("JJPHOTOND_WORKERS")) {
        try {
            const long value = std::stol(env);
            if (value >= 1) {
                return static_cast<unsigned>(value);
            }
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("JJPHOTOND_WORKERS must be a positive integer, got '") +
                          env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RateMode parse_mode(const std::string& text) {
    if (text == "raw") {
        return RateMode::raw;
    }
    if (text == "anchored") {
        return RateMode::anchored;
    }
    throw ConfigError("--mode must be raw or anchored, got '" + text + "'", {"rate_mode"});
}

void apply_rate_mode(SimParams& params, RateMode mode) {
    const auto kind = params.origin.kind;
    if (kind != RateOrigin::Kind::bias_anchored && kind != RateOrigin::Kind::bias_raw) {
        throw ConfigError("--mode only applies when tunneling rates come from bias_x",
                          {"bias_x", "rate_mode"});
    }
    const double x = params.origin.bias_x;
    if (mode == RateMode::anchored) {
        const RatePair rates = rates_anchored(x);
        params.gamma_g = seconds_rate_to_internal(rates.gamma_g);
        params.gamma_e = seconds_rate_to_internal(rates.gamma_e);
        params.origin = {RateOrigin::Kind::bias_anchored, x, 0.0};
    } else {
        const double omega_p = params.origin.omega_p > 0.0 ? params.origin.omega_p : params.omega_eg;
        const RatePair rates = rates_raw(x, rad_per_ns_to_rad_per_s(omega_p));
        params.gamma_g = seconds_rate_to_internal(rates.gamma_g);
        params.gamma_e = seconds_rate_to_internal(rates.gamma_e);
        params.origin = {RateOrigin::Kind::bias_raw, x, omega_p};
    }
}

SimParams resolve_params(const CommonOptions& options) {
    SimParams params =
        options.config.empty() ? baseline_preset() : validate(load_config_file(options.config));
    if (!options.mode.empty()) {
        apply_rate_mode(params, parse_mode(options.mode));
    }
    if (!options.frame.empty()) {
        if (options.frame == "rotating-secular") {
            params.frame = FrameMode::rotating_secular;
        } else if (options.frame == "lab-full") {
            params.frame = FrameMode::lab_full;
            if (params.tol.max_step_ns == 0.0) {
                params.tol.max_step_ns = 1e-3;
            }
        } else {
            throw ConfigError("--frame must be rotating-secular or lab-full", {"frame"});
        }
    }
    if (options.stride_set) {
        if (!(options.stride_ns > 0.0)) {
            throw ConfigError("--stride-ns must be > 0", {"stride_ns"});
        }
        params.grid.stride_ns = options.stride_ns;
    }
    if (options.t_end_set) {
        if (!(options.t_end_ns > 0.0)) {
            throw ConfigError("--t-end-ns must be > 0", {"t_end_ns"});
        }
        params.grid.t_end_ns = options.t_end_ns;
    }
    if (params.grid.stride_ns > params.grid.t_end_ns) {
        throw ConfigError("stride exceeds t_end", {"stride_ns", "t_end_ns"});
    }
    return params;
}

json params_json(const SimParams& params) {
    json doc = json::parse(to_config_json(params));
    doc["internal_units"] = {
        {"omega_eg_rad_per_ns", params.omega_eg}, {"delta_rad_per_ns", params.delta},
        {"omega_rabi_rad_per_ns", params.omega_rabi}, {"kappa_per_ns", params.kappa},
        {"gamma_per_ns", params.gamma}, {"gamma_g_per_ns", params.gamma_g},
        {"gamma_e_per_ns", params.gamma_e}};
    return doc;
}

json stats_json(const StepStats& stats) {
    return {{"accepted_steps", stats.accepted},
            {"rejected_steps", stats.rejected},
            {"max_hermiticity_drift", stats.max_hermiticity_drift},
            {"hermiticity_ok", stats.hermitian_ok()},
            {"min_eigenvalue", stats.min_eigenvalue},
            {"positivity_ok", stats.positive_ok()},
            {"max_trace_uptick", stats.max_trace_uptick},
            {"trace_monotone", stats.trace_monotone()}};
}

json rate_note(const SimParams& params) {
    json note = {{"rate_origin", to_string(params.origin.kind)}};
    if (params.origin.kind == RateOrigin::Kind::bias_anchored ||
        params.origin.kind == RateOrigin::Kind::bias_raw) {
        const double x = params.origin.bias_x;
        const double omega_p =
            params.origin.omega_p > 0.0 ? params.origin.omega_p : params.omega_eg;
        const RatePair raw = rates_raw(x, rad_per_ns_to_rad_per_s(omega_p));
        note["rate_mode"] = params.origin.kind == RateOrigin::Kind::bias_raw ? "raw" : "anchored";
        note["bias_x"] = x;
        note["raw_formula_omega_p_ghz"] = rad_per_ns_to_ghz(omega_p);
        note["raw_formula_gamma_e_per_s"] = raw.gamma_e;
        if (x >= anchored_x_min && x <= anchored_x_max) {
            const RatePair anchored = rates_anchored(x);
            note["anchored_gamma_e_per_s"] = anchored.gamma_e;
            note["anchored_over_raw"] = anchored.gamma_e / raw.gamma_e;
        }
    }
    return note;
}

json base_manifest(const std::string& command, const SimParams& params) {
    return {{"tool", "jjphotond"},
            {"version", version},
            {"command", command},
            {"frame", to_string(params.frame)},
            {"params", params_json(params)},
            {"rates", rate_note(params)}};
}

std::string stem_of(const std::string& name) { return fs::path(name).stem().string(); }

/// Writes every file through a temporary and renames at the end, so a failure
/// leaves no partial output behind.
void write_outputs(const fs::path& dir, const std::vector<OutputFile>& files) {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& file : files) {
            const fs::path final_path = dir / file.name;
            const fs::path temp_path = dir / (file.name + ".tmp");
            std::ofstream out(temp_path, std::ios::binary | std::ios::trunc);
            out << file.content;
            out.close();
            if (!out) {
                throw Error("failed to write " + temp_path.string());
            }
            staged.emplace_back(temp_path, final_path);
        }
        for (const auto& [temp_path, final_path] : staged) {
            fs::rename(temp_path, final_path);
        }
    } catch (...) {
        for (const auto& [temp_path, final_path] : staged) {
            std::error_code ignored;
            fs::remove(temp_path, ignored);
        }
        throw;
    }
}

void add_with_manifest(std::vector<OutputFile>& files, std::string name, std::string content,
                       json manifest) {
    manifest["data_file"] = name;
    files.push_back({stem_of(name) + ".manifest.json", manifest.dump(2) + "\n"});
    files.push_back({std::move(name), std::move(content)});
}

// ---------------------------------------------------------------- rates

struct RatesOptions {
    double bias_x = 0.0;
    double omega_p_ghz = 0.0;
    double i_over_i0 = 0.0;
    double i0_ua = 0.0;
    double c_pf = 0.0;
    bool bias_set = false;
    bool omega_p_set = false;
    bool physical_set = false;
};

void print_row(std::ostream& out, const std::string& name, double si, const std::string& si_unit,
               double internal, const std::string& internal_unit) {
    out << std::left << std::setw(26) << name << std::right << std::setw(24)
        << csv::format_number(si) << ' ' << std::left << std::setw(8) << si_unit;
    if (!internal_unit.empty()) {
        out << std::right << std::setw(24) << csv::format_number(internal) << ' ' << internal_unit;
    }
    out << '\n';
}

int cmd_rates(const CommonOptions& common, const RatesOptions& options, std::ostream& out) {
    const auto start = Clock::now();
    json manifest = {{"tool", "jjphotond"}, {"version", version}, {"command", "rates"}};

    struct Row {
        std::string name;
        double si;
        std::string si_unit;
        double internal;
        std::string internal_unit;
    };
    std::vector<Row> rows;
    std::string mode_label;

    const auto add_rates = [&](double gamma_g, double gamma_e) {
        rows.push_back({"gamma_g", gamma_g, "1/s", seconds_rate_to_internal(gamma_g), "1/ns"});
        rows.push_back({"gamma_e", gamma_e, "1/s", seconds_rate_to_internal(gamma_e), "1/ns"});
        rows.push_back({"gamma_e_over_gamma_g", gamma_e / gamma_g, "-", gamma_e / gamma_g, "-"});
    };
    const auto add_cubic = [&](double omega_p, double x) {
        rows.push_back({"barrier_height", x * PhysicalConstants::hbar * omega_p, "J",
                        x * PhysicalConstants::hbar * omega_p, "J"});
        rows.push_back({"omega_p_over_2pi", omega_p / two_pi, "Hz",
                        rad_per_ns_to_ghz(rad_per_s_to_rad_per_ns(omega_p)), "GHz"});
        const double omega_eg = transition_frequency(omega_p, x);
        rows.push_back({"omega_eg_over_2pi", omega_eg / two_pi, "Hz",
                        rad_per_ns_to_ghz(rad_per_s_to_rad_per_ns(omega_eg)), "GHz"});
        rows.push_back({"x", x, "-", x, "-"});
    };

    const int sources = int(options.bias_set) + int(options.physical_set) + int(!common.config.empty());
    if (sources == 0) {
        throw ConfigError(
            "rates needs a tunneling spec: --bias-x [--mode raw|anchored --omega-p-ghz], "
            "--i-over-i0 --i0-ua --c-pf, or --config with one of gamma_g_per_s+gamma_e_per_s | "
            "bias_x+rate_mode | i_over_i0+i0_ua+c_pf",
            {"bias_x", "rate_mode", "i_over_i0", "i0_ua", "c_pf", "gamma_g_per_s",
             "gamma_e_per_s"});
    }
    if (sources > 1) {
        throw ConfigError("give exactly one of --bias-x, the physical bias flags, or --config");
    }

    if (options.physical_set) {
        if (options.i0_ua <= 0.0 || options.c_pf <= 0.0) {
            throw ConfigError("physical bias needs --i-over-i0, --i0-ua and --c-pf",
                              {"i_over_i0", "i0_ua", "c_pf"});
        }
        const JunctionDerived derived =
            derive({options.i_over_i0, options.i0_ua * 1e-6, options.c_pf * 1e-12});
        mode_label = "raw";
        add_cubic(derived.plasma_frequency, derived.bias_x);
        add_rates(derived.gamma_g_per_s, derived.gamma_e_per_s);
    } else if (options.bias_set) {
        const RateMode mode = common.mode.empty() ? RateMode::anchored : parse_mode(common.mode);
        mode_label = to_string(mode);
        const double x = options.bias_x;
        if (!(x > 0.0)) {
            throw ConfigError("--bias-x must be > 0", {"bias_x"});
        }
        if (options.omega_p_set) {
            add_cubic(rad_per_ns_to_rad_per_s(ghz_to_rad_per_ns(options.omega_p_ghz)), x);
        } else {
            rows.push_back({"x", x, "-", x, "-"});
        }
        if (mode == RateMode::anchored) {
            const RatePair rates = rates_anchored(x);
            add_rates(rates.gamma_g, rates.gamma_e);
        } else {
            if (!options.omega_p_set) {
                throw ConfigError("raw mode needs the plasma frequency: --omega-p-ghz",
                                  {"omega_p_ghz"});
            }
            const RatePair rates =
                rates_raw(x, rad_per_ns_to_rad_per_s(ghz_to_rad_per_ns(options.omega_p_ghz)));
            add_rates(rates.gamma_g, rates.gamma_e);
        }
        if (options.omega_p_set) {
            const RatePair raw =
                rates_raw(x, rad_per_ns_to_rad_per_s(ghz_to_rad_per_ns(options.omega_p_ghz)));
            manifest["raw_formula_gamma_e_per_s"] = raw.gamma_e;
        }
        if (x >= anchored_x_min && x <= anchored_x_max) {
            manifest["anchored_gamma_e_per_s"] = rates_anchored(x).gamma_e;
        }
    } else {
        SimParams params = resolve_params(common);
        manifest["params"] = params_json(params);
        manifest["rates"] = rate_note(params);
        mode_label = params.origin.kind == RateOrigin::Kind::bias_raw        ? "raw"
                     : params.origin.kind == RateOrigin::Kind::bias_anchored ? "anchored"
                                                                             : "explicit";
        if (params.origin.omega_p > 0.0) {
            add_cubic(rad_per_ns_to_rad_per_s(params.origin.omega_p), params.origin.bias_x);
        } else if (params.origin.bias_x > 0.0) {
            rows.push_back({"x", params.origin.bias_x, "-", params.origin.bias_x, "-"});
        }
        add_rates(internal_rate_to_seconds(params.gamma_g), internal_rate_to_seconds(params.gamma_e));
    }

    out << "# tunneling rates (mode: " << mode_label << ")\n";
    for (const auto& row : rows) {
        print_row(out, row.name, row.si, row.si_unit, row.internal, row.internal_unit);
    }

    manifest["rate_mode"] = mode_label;
    manifest["wall_clock_seconds"] = seconds_since(start);
    if (common.out_dir != ".") {
        std::string csv = "quantity,si_value,si_unit,internal_value,internal_unit\n";
        for (const auto& row : rows) {
            csv += row.name + ',' + csv::format_number(row.si) + ',' + row.si_unit + ',' +
                   csv::format_number(row.internal) + ',' + row.internal_unit + '\n';
        }
        std::vector<OutputFile> files;
        add_with_manifest(files, "rates.csv", std::move(csv), manifest);
        write_outputs(common.out_dir, files);
    }
    return ok;
}

// ---------------------------------------------------------------- efficiency

int cmd_efficiency(const CommonOptions& common, std::ostream& out) {
    const auto start = Clock::now();
    const SimParams params = resolve_params(common);
    const EfficiencyCurve curve = efficiency_curve(params, params.n_init);
    const OptimalPoint best = optimal_detection(curve);

    json manifest = base_manifest("efficiency", params);
    manifest["optimum"] = {{"t_d_ns", best.t_d}, {"eta_max", best.eta_max},
                           {"degenerate", best.degenerate}};
    manifest["plateau_estimate"] = params.gamma_e + params.gamma > 0.0 ? plateau_estimate(params) : 0.0;
    manifest["invariants"] = stats_json(curve.stats);
    manifest["wall_clock_seconds"] = seconds_since(start);

    std::vector<OutputFile> files;
    add_with_manifest(files, "efficiency.csv", csv::efficiency(curve), manifest);
    write_outputs(common.out_dir, files);
    out << "t_d_ns=" << csv::format_number(best.t_d)
        << " eta_max=" << csv::format_number(best.eta_max) << '\n';
    return ok;
}

// ---------------------------------------------------------------- bandwidth

json bandwidth_json(const BandwidthResult& result, double omega) {
    return {{"t_d_ns", result.t_d},
            {"eta_zero_detuning", result.eta_zero},
            {"delta_minus_over_omega", result.delta_minus / omega},
            {"delta_plus_over_omega", result.delta_plus / omega},
            {"width_over_omega", result.width_over_omega},
            {"half_width_over_omega", 0.5 * result.width_over_omega},
            {"scan_step_over_omega", result.scan_step_over_omega}};
}

BandwidthResult run_bandwidth(const SimParams& params, double scan_step) {
    SimParams centered = params;
    centered.delta = 0.0;
    const OptimalPoint best = optimal_detection(efficiency_curve(centered, centered.n_init));
    if (best.degenerate) {
        throw BandwidthRangeError("no positive efficiency at zero detuning", {});
    }
    return bandwidth(centered, best.t_d, scan_step);
}

int cmd_bandwidth(const CommonOptions& common, double scan_step, std::ostream& out) {
    const auto start = Clock::now();
    const SimParams params = resolve_params(common);
    json manifest = base_manifest("bandwidth", params);
    std::vector<OutputFile> files;
    try {
        const BandwidthResult result = run_bandwidth(params, scan_step);
        manifest["bandwidth"] = bandwidth_json(result, params.omega_rabi);
        manifest["width_over_omega"] = result.width_over_omega;
        manifest["wall_clock_seconds"] = seconds_since(start);
        add_with_manifest(files, "bandwidth.csv", csv::bandwidth_scan(result.scan), manifest);
        write_outputs(common.out_dir, files);
        out << "width_over_omega=" << csv::format_number(result.width_over_omega)
            << " t_d_ns=" << csv::format_number(result.t_d) << '\n';
        return ok;
    } catch (const BandwidthRangeError& e) {
        manifest["error"] = e.what();
        manifest["wall_clock_seconds"] = seconds_since(start);
        add_with_manifest(files, "bandwidth.csv", csv::bandwidth_scan(e.scan()), manifest);
        write_outputs(common.out_dir, files);
        throw;
    }
}

// ---------------------------------------------------------------- sweep + figures

std::string axis_label(SweepParameter parameter, double value) {
    std::ostringstream label;
    switch (parameter) {
    case SweepParameter::t1_ns:
        label << "t1_" << value << "ns";
        break;
    case SweepParameter::bias_x:
        label << "x" << std::fixed << std::setprecision(1) << value;
        break;
    case SweepParameter::delta_over_omega:
        label << "delta" << value;
        break;
    case SweepParameter::n_init:
        label << "n" << value;
        break;
    }
    return label.str();
}

SweepResult run_sweep(const SimParams& params, SweepParameter parameter,
                      std::vector<double> values, unsigned workers, bool keep_curves) {
    // Surface template/axis incompatibilities as configuration errors up front.
    for (const double v : values) {
        try {
            (void)apply_axis_value(params, parameter, v);
        } catch (const RangeError& e) {
            throw ConfigError(std::string("invalid sweep value: ") + e.what());
        }
    }
    return sweep(params, {parameter, std::move(values)}, {workers, keep_curves});
}

json sweep_json(const SweepResult& result) {
    json points = json::array();
    for (const auto& point : result.points) {
        json row = {{"value", point.value}, {"ok", point.ok()}};
        if (point.ok()) {
            row["t_d_ns"] = point.optimum->t_d;
            row["eta_max"] = point.optimum->eta_max;
        } else {
            row["error"] = point.error;
        }
        if (point.curve) {
            row["invariants"] = stats_json(point.curve->stats);
        }
        points.push_back(std::move(row));
    }
    return {{"parameter", std::string(to_string(result.axis.parameter))}, {"points", points}};
}

int cmd_sweep(const CommonOptions& common, const std::string& parameter_name,
              const std::vector<double>& values, std::ostream& out) {
    const auto start = Clock::now();
    const auto parameter = parse_sweep_parameter(parameter_name);
    if (!parameter) {
        throw ConfigError("unknown sweep parameter '" + parameter_name +
                              "' (expected t1_ns, bias_x, delta_over_omega or n_init)",
                          {"param"});
    }
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value (--values)", {"values"});
    }
    const SimParams params = resolve_params(common);
    const SweepResult result = run_sweep(params, *parameter, values, resolve_workers(common), true);

    json manifest = base_manifest("sweep", params);
    manifest["sweep"] = sweep_json(result);
    manifest["wall_clock_seconds"] = seconds_since(start);
    const std::string name = "sweep_" + std::string(to_string(*parameter)) + ".csv";
    std::vector<OutputFile> files;
    add_with_manifest(files, name, csv::sweep(result), manifest);
    write_outputs(common.out_dir, files);
    out << csv::sweep(result);
    if (!result.all_ok()) {
        throw PartialSweepError("one or more sweep points failed");
    }
    return ok;
}

/// One eta(t) series per sweep value; optima land in the manifests.
void add_eta_series(std::vector<OutputFile>& files, const std::string& figure,
                    const SimParams& params, const SweepResult& result) {
    for (const auto& point : result.points) {
        if (!point.ok()) {
            throw PartialSweepError("figure " + figure + " series failed: " + point.error);
        }
        json manifest = base_manifest("figure " + figure, apply_axis_value(params, result.axis.parameter, point.value));
        manifest["series"] = {{std::string(to_string(result.axis.parameter)), point.value}};
        manifest["optimum"] = {{"t_d_ns", point.optimum->t_d}, {"eta_max", point.optimum->eta_max}};
        manifest["invariants"] = stats_json(point.curve->stats);
        add_with_manifest(files,
                          "fig" + figure + "_" + axis_label(result.axis.parameter, point.value) + ".csv",
                          csv::series("t_ns", "eta", point.curve->times, point.curve->eta),
                          manifest);
    }
}

int cmd_figure(const CommonOptions& common, const std::string& id, std::ostream& out) {
    const auto start = Clock::now();
    if (id != "2" && id != "3" && id != "4a" && id != "4b" && id != "5") {
        throw ConfigError("unknown figure id '" + id + "' (expected 2, 3, 4a, 4b or 5)");
    }
    CommonOptions preset = common;
    preset.config.clear();
    const SimParams params = resolve_params(preset);
    const unsigned workers = resolve_workers(common);
    std::vector<OutputFile> files;

    if (id == "2") {
        const EfficiencyCurve curve = efficiency_curve(params, 1);
        const OptimalPoint best = optimal_detection(curve);
        json manifest = base_manifest("figure 2", params);
        manifest["optimum"] = {{"t_d_ns", best.t_d}, {"eta_max", best.eta_max}};
        manifest["plateau_estimate"] = plateau_estimate(params);
        manifest["invariants"] = stats_json(curve.stats);
        add_with_manifest(files, "fig2_P1.csv", csv::series("t_ns", "P_1", curve.times, curve.p_n), manifest);
        add_with_manifest(files, "fig2_P0.csv", csv::series("t_ns", "P_0", curve.times, curve.p_0), manifest);
        add_with_manifest(files, "fig2_eta.csv", csv::series("t_ns", "eta", curve.times, curve.eta), manifest);
        out << "fig2 t_d_ns=" << csv::format_number(best.t_d)
            << " eta_max=" << csv::format_number(best.eta_max) << '\n';
    } else if (id == "3") {
        for (const double x : {2.0, 1.9, 1.8}) {
            const SimParams point = apply_axis_value(params, SweepParameter::bias_x, x);
            const BandwidthResult result = run_bandwidth(point, 0.1);
            json manifest = base_manifest("figure 3", point);
            manifest["bandwidth"] = bandwidth_json(result, point.omega_rabi);
            manifest["width_over_omega"] = result.width_over_omega;
            add_with_manifest(files, "fig3_" + axis_label(SweepParameter::bias_x, x) + ".csv",
                              csv::bandwidth_scan(result.scan), manifest);
            out << "fig3 x=" << x << " width_over_omega="
                << csv::format_number(result.width_over_omega) << '\n';
        }
    } else {
        SweepParameter parameter = SweepParameter::t1_ns;
        std::vector<double> values;
        if (id == "4a") {
            values = {10.0, 20.0, 50.0, 500.0};
        } else if (id == "4b") {
            parameter = SweepParameter::bias_x;
            values = {2.0, 1.9, 1.8, 1.7};
        } else {
            parameter = SweepParameter::n_init;
            values = {1.0, 2.0, 3.0};
        }
        const SweepResult result = run_sweep(params, parameter, values, workers, true);
        add_eta_series(files, id, params, result);
        out << csv::sweep(result);
    }
    for (auto& file : files) {
        if (file.name.ends_with(".manifest.json")) {
            json manifest = json::parse(file.content);
            manifest["wall_clock_seconds"] = seconds_since(start);
            file.content = manifest.dump(2) + "\n";
        }
    }
    write_outputs(common.out_dir, files);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Josephson-junction photon detector simulator", "jjphotond"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    CommonOptions common;
    app.add_option("--config", common.config, "JSON config document")->check(CLI::ExistingFile);
    app.add_option("--out", common.out_dir, "Output directory");
    app.add_option("--mode", common.mode, "Tunneling rate mode: raw|anchored");
    app.add_option("--frame", common.frame, "rotating-secular|lab-full");
    auto* workers_opt = app.add_option("--workers", common.workers, "Sweep worker threads");
    auto* stride_opt = app.add_option("--stride-ns", common.stride_ns, "Output stride in ns");
    auto* t_end_opt = app.add_option("--t-end-ns", common.t_end_ns, "End time in ns");

    RatesOptions rates;
    auto* rates_cmd = app.add_subcommand("rates", "Cubic-potential quantities and WKB tunneling rates");
    auto* bias_opt = rates_cmd->add_option("--bias-x", rates.bias_x, "Barrier ratio dU/(hbar w_p)");
    auto* omega_p_opt = rates_cmd->add_option("--omega-p-ghz", rates.omega_p_ghz, "w_p / 2pi in GHz");
    auto* ratio_opt = rates_cmd->add_option("--i-over-i0", rates.i_over_i0, "Bias current ratio");
    auto* i0_opt = rates_cmd->add_option("--i0-ua", rates.i0_ua, "Critical current in uA");
    auto* c_opt = rates_cmd->add_option("--c-pf", rates.c_pf, "Capacitance in pF");

    auto* efficiency_cmd = app.add_subcommand("efficiency", "P_n(t), P_0(t) and eta(t) as CSV");

    double scan_step = 0.1;
    auto* bandwidth_cmd = app.add_subcommand("bandwidth", "Half-efficiency width in detuning");
    bandwidth_cmd->add_option("--scan-step", scan_step, "Bracketing scan step in units of Omega")
        ->check(CLI::PositiveNumber);

    std::string figure_id;
    auto* figure_cmd = app.add_subcommand("figure", "CSV series for a reference figure");
    figure_cmd->add_option("id", figure_id, "2, 3, 4a, 4b or 5")->required();

    std::string sweep_param;
    std::vector<double> sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Optimal detection across one parameter");
    sweep_cmd->add_option("--param", sweep_param, "t1_ns|bias_x|delta_over_omega|n_init")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->delimiter(',');

    for (auto* sub : {rates_cmd, efficiency_cmd, bandwidth_cmd, figure_cmd, sweep_cmd}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }
    common.workers_set = workers_opt->count() > 0;
    common.stride_set = stride_opt->count() > 0;
    common.t_end_set = t_end_opt->count() > 0;
    rates.bias_set = bias_opt->count() > 0;
    rates.omega_p_set = omega_p_opt->count() > 0;
    rates.physical_set = ratio_opt->count() + i0_opt->count() + c_opt->count() > 0;

    try {
        if (rates_cmd->parsed()) {
            return cmd_rates(common, rates, out);
        }
        if (efficiency_cmd->parsed()) {
            return cmd_efficiency(common, out);
        }
        if (bandwidth_cmd->parsed()) {
            return cmd_bandwidth(common, scan_step, out);
        }
        if (figure_cmd->parsed()) {
            return cmd_figure(common, figure_id, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(common, sweep_param, sweep_values, out);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        if (!e.keys().empty()) {
            err << "  keys:";
            for (const auto& key : e.keys()) {
                err << ' ' << key;
            }
            err << '\n';
        }
        return config_error;
    } catch (const BandwidthRangeError& e) {
        err << "bandwidth error: " << e.what() << '\n';
        return bandwidth_range_failure;
    } catch (const PartialSweepError& e) {
        err << "sweep error: " << e.what() << '\n';
        return partial_sweep_failure;
    } catch (const IntegrationError& e) {
        err << "integration failure: " << e.what() << '\n';
        return integration_failure;
    } catch (const RangeError& e) {
        err << "configuration error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return config_error;
}

}  // namespace jjphotond::cli
