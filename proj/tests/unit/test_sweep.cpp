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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jjphotond/config.hpp"
#include "jjphotond/csv.hpp"
#include "jjphotond/errors.hpp"
#include "jjphotond/sweep.hpp"

using namespace jjphotond;
using Catch::Approx;

namespace {

SimParams quick_base() {
    SimParams p = baseline_preset();
    p.grid.t_end_ns = 150.0;
    p.grid.stride_ns = 0.1;
    return p;
}

}  // namespace

TEST_CASE("parameter names round-trip", "[sweep]") {
    for (auto p : {SweepParameter::t1_ns, SweepParameter::bias_x, SweepParameter::delta_over_omega,
                   SweepParameter::n_init}) {
        CHECK(parse_sweep_parameter(to_string(p)) == p);
    }
    CHECK_FALSE(parse_sweep_parameter("kappa").has_value());
}

TEST_CASE("axis values map onto parameters", "[sweep]") {
    const SimParams base = baseline_preset();
    CHECK(apply_axis_value(base, SweepParameter::t1_ns, 20.0).gamma == Approx(0.05));
    CHECK(apply_axis_value(base, SweepParameter::delta_over_omega, -1.5).delta ==
          Approx(-1.5 * base.omega_rabi));
    const SimParams three = apply_axis_value(base, SweepParameter::n_init, 3.0);
    CHECK(three.n_init == 3);
    CHECK(three.n_max == 3);
    const SimParams lower = apply_axis_value(base, SweepParameter::bias_x, 1.8);
    CHECK(internal_rate_to_seconds(lower.gamma_e) == Approx(263069608.342275).epsilon(1e-12));
    CHECK(lower.omega_eg == base.omega_eg);

    CHECK_THROWS_AS(apply_axis_value(base, SweepParameter::t1_ns, 0.0), RangeError);
    CHECK_THROWS_AS(apply_axis_value(base, SweepParameter::n_init, 1.5), RangeError);
    CHECK_THROWS_AS(apply_axis_value(base, SweepParameter::bias_x, 0.2), RangeError);
    CHECK_THROWS_AS(apply_axis_value(base, SweepParameter::t1_ns, std::nan("")), RangeError);

    SimParams explicit_rates = base;
    explicit_rates.origin.kind = RateOrigin::Kind::explicit_rates;
    CHECK_THROWS_AS(apply_axis_value(explicit_rates, SweepParameter::bias_x, 2.0), ConfigError);
}

TEST_CASE("results keep input order and are worker-independent", "[sweep]") {
    const SweepAxis axis{SweepParameter::t1_ns, {500.0, 10.0, 50.0, 20.0}};
    const SweepResult serial = sweep(quick_base(), axis, {1, false});
    const SweepResult parallel = sweep(quick_base(), axis, {3, true});
    REQUIRE(serial.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(serial.points[i].value == axis.values[i]);
        CHECK(parallel.points[i].value == axis.values[i]);
        CHECK(parallel.points[i].curve.has_value());
        CHECK_FALSE(serial.points[i].curve.has_value());
    }
    CHECK(csv::sweep(serial) == csv::sweep(parallel));
    CHECK(serial.all_ok());
}

TEST_CASE("failed points are recorded without stopping the sweep", "[sweep]") {
    const SweepAxis axis{SweepParameter::t1_ns, {10.0, -5.0, 20.0}};
    const SweepResult r = sweep(quick_base(), axis, {2, false});
    CHECK(r.points[0].ok());
    CHECK_FALSE(r.points[1].ok());
    CHECK_FALSE(r.points[1].error.empty());
    CHECK(r.points[2].ok());
    CHECK_FALSE(r.all_ok());
    CHECK(csv::sweep(r).find("-5,nan,nan\n") != std::string::npos);
}

TEST_CASE("efficiency trends along each axis", "[sweep]") {
    const SimParams base = quick_base();
    SECTION("longer T1 helps") {
        const SweepResult r = sweep(base, {SweepParameter::t1_ns, {10.0, 20.0, 50.0}});
        CHECK(r.points[0].optimum->eta_max < r.points[1].optimum->eta_max);
        CHECK(r.points[1].optimum->eta_max < r.points[2].optimum->eta_max);
    }
    SECTION("lower barrier helps and speeds detection") {
        const SweepResult r = sweep(base, {SweepParameter::bias_x, {2.0, 1.9, 1.8}});
        CHECK(r.points[0].optimum->eta_max < r.points[1].optimum->eta_max);
        CHECK(r.points[1].optimum->eta_max < r.points[2].optimum->eta_max);
        CHECK(r.points[0].optimum->t_d > r.points[2].optimum->t_d);
    }
    SECTION("more photons help") {
        const SweepResult r = sweep(base, {SweepParameter::n_init, {1.0, 2.0, 3.0}});
        CHECK(r.points[0].optimum->eta_max < r.points[1].optimum->eta_max);
        CHECK(r.points[1].optimum->eta_max < r.points[2].optimum->eta_max);
    }
    SECTION("detuning hurts") {
        const SweepResult r = sweep(base, {SweepParameter::delta_over_omega, {0.0, 1.0, 3.0}});
        CHECK(r.points[0].optimum->eta_max > r.points[1].optimum->eta_max);
        CHECK(r.points[1].optimum->eta_max > r.points[2].optimum->eta_max);
    }
}
