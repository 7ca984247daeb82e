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
#include <random>
#include <vector>

#include "jjphotond/errors.hpp"
#include "jjphotond/metrics.hpp"
#include "jjphotond/propagation.hpp"
#include "test_support.hpp"

using namespace jjphotond;
using Catch::Approx;

namespace {

constexpr auto g = JunctionLevel::ground;
constexpr auto e = JunctionLevel::excited;

SimParams reference_params() {
    SimParams p;
    p.omega_eg = two_pi * 4.8;
    p.omega_rabi = two_pi * 0.2;
    p.kappa = 1e-3;
    p.gamma = 0.1;
    p.gamma_e = 0.073;
    p.gamma_g = 1.4975593879178550e-4;
    p.n_init = 1;
    p.n_max = 1;
    return p;
}

}  // namespace

TEST_CASE("closed resonant system Rabi-oscillates", "[propagation]") {
    SimParams p = reference_params();
    p.kappa = p.gamma = p.gamma_e = p.gamma_g = 0.0;
    const HilbertSpace s(1);
    const Liouvillian l = assemble(p, s);
    const Trajectory traj = evolve(l, pure_state(s, g, 1), TimeGrid{20.0, 0.1});
    const auto ie = s.index(e, 0);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double expected = std::pow(std::sin(p.omega_rabi * traj.times[k] / 2.0), 2);
        worst = std::max(worst, std::abs(traj.states[k](ie, ie).real() - expected));
        CHECK(trace_real(traj.states[k]) == Approx(1.0).epsilon(1e-10));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("dark state leaks at the ground-state rate", "[propagation]") {
    SimParams p = reference_params();
    p.n_max = 0;
    const HilbertSpace s(0);
    const Liouvillian l = assemble(p, s);
    const Trajectory traj = evolve(l, pure_state(s, g, 0), TimeGrid{200.0, 1.0});
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        CHECK(trace_real(traj.states[k]) ==
              Approx(std::exp(-p.gamma_g * traj.times[k])).epsilon(1e-10));
    }
}

TEST_CASE("zero generator leaves the state unchanged", "[propagation]") {
    SimParams p;
    p.n_max = 2;
    const HilbertSpace s(2);
    std::mt19937_64 rng(1);
    const CMatrix rho = testing::random_density(s.dim(), rng);
    const Trajectory traj = evolve(assemble(p, s), rho, TimeGrid{5.0, 1.0});
    for (const CMatrix& state : traj.states) {
        CHECK(max_abs_diff(state, rho) < 1e-15);
    }
    CHECK(max_abs_diff(exact_state(assemble(p, s), rho, 3.0), rho) < 1e-15);
}

TEST_CASE("adaptive integrator agrees with the exact propagator", "[propagation][property]") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        SimParams p = trial == 0 ? reference_params() : testing::random_params(rng);
        p.n_max = std::max(p.n_init, 1) + trial % 2;
        const HilbertSpace s(p.n_max);
        const Liouvillian l = assemble(p, s);
        const CMatrix rho0 = trial % 3 == 2 ? testing::random_density(s.dim(), rng)
                                            : pure_state(s, g, std::max(p.n_init, 1));
        const CMatrix approx = evolve_to(l, rho0, 100.0);
        const CMatrix exact = exact_state(l, rho0, 100.0);
        INFO("trial " << trial);
        CHECK(max_abs_diff(approx, exact) < 1e-8);
    }
}

TEST_CASE("exact stepping composes", "[propagation]") {
    const SimParams p = reference_params();
    const HilbertSpace s(1);
    const Liouvillian l = assemble(p, s);
    const ExactPropagator step(l, 5.0);
    CMatrix rho = pure_state(s, g, 1);
    for (int k = 0; k < 10; ++k) {
        rho = step.step(rho);
    }
    CHECK(max_abs_diff(rho, exact_state(l, pure_state(s, g, 1), 50.0)) < 1e-12);
}

TEST_CASE("trajectory invariants", "[propagation][property]") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        SimParams p = testing::random_params(rng);
        p.n_max = p.n_init + 1;
        const HilbertSpace s(p.n_max);
        const Trajectory traj =
            evolve(assemble(p, s), pure_state(s, g, p.n_init), TimeGrid{100.0, 0.5});
        INFO("trial " << trial);
        CHECK(traj.stats.trace_monotone());
        CHECK(traj.stats.hermitian_ok());
        CHECK(traj.stats.positive_ok());
        CHECK(traj.stats.accepted > 0);
        for (std::size_t k = 1; k < traj.states.size(); ++k) {
            CHECK(trace_real(traj.states[k]) <= trace_real(traj.states[k - 1]) + 1e-10);
        }
    }
}

TEST_CASE("trace leak rate equals the tunneling expectation", "[propagation]") {
    const SimParams p = reference_params();
    const HilbertSpace s(1);
    const Liouvillian l = assemble(p, s);
    const CMatrix rho0 = pure_state(s, g, 1);
    for (const double t : {5.0, 17.0, 40.0, 90.0}) {
        // Richardson-extrapolated central difference; the h^4 term is ~1e-11 here.
        const double h = 0.01;
        std::vector<double> tr;
        for (const double s : {t - 2 * h, t - h, t + h, t + 2 * h}) {
            tr.push_back(trace_real(exact_state(l, rho0, s)));
        }
        const double d1 = (tr[2] - tr[1]) / (2 * h);
        const double d2 = (tr[3] - tr[0]) / (4 * h);
        const double derivative = (4.0 * d1 - d2) / 3.0;
        const double leak = (l.leak_operator() * exact_state(l, rho0, t)).trace().real();
        INFO("t = " << t);
        CHECK(derivative == Approx(-leak).epsilon(1e-6).margin(1e-10));
    }
}

TEST_CASE("forward differences of the trace converge to the leak", "[propagation]") {
    const SimParams p = reference_params();
    const HilbertSpace s(1);
    const Liouvillian l = assemble(p, s);
    const CMatrix rho_t = exact_state(l, pure_state(s, g, 1), 30.0);
    const double leak = (l.leak_operator() * rho_t).trace().real();
    std::vector<double> errors;
    std::vector<double> slopes;
    for (const double h : {4e-3, 2e-3, 1e-3}) {
        const double slope = (trace_real(exact_state(l, rho_t, h)) - trace_real(rho_t)) / h;
        slopes.push_back(slope);
        errors.push_back(std::abs(slope + leak));
    }
    // first order: each halving halves the error
    CHECK(errors[1] / errors[0] == Approx(0.5).margin(0.05));
    CHECK(errors[2] / errors[1] == Approx(0.5).margin(0.05));
    // two Richardson levels remove the O(h) and O(h^2) terms
    const double r1 = 2.0 * slopes[1] - slopes[0];
    const double r2 = 2.0 * slopes[2] - slopes[1];
    const double richardson = (4.0 * r2 - r1) / 3.0;
    CHECK(std::abs(richardson + leak) < 1e-6 * std::abs(leak));
    CHECK(std::abs(richardson + leak) < errors[2] * 1e-3);
}

TEST_CASE("halving the tolerance changes nothing visible", "[propagation]") {
    const SimParams p = reference_params();
    const HilbertSpace s(1);
    const Liouvillian l = assemble(p, s);
    Tolerances half;
    half.rel = 0.5e-9;
    half.abs = 0.5e-12;
    const Trajectory a = evolve(l, pure_state(s, g, 1), TimeGrid{200.0, 0.5});
    const Trajectory b = evolve(l, pure_state(s, g, 1), TimeGrid{200.0, 0.5}, half);
    const auto pa = switching_probability(a);
    const auto pb = switching_probability(b);
    double worst = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        worst = std::max(worst, std::abs(pa[k] - pb[k]));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("secular dynamics ignore extra photon levels", "[propagation]") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 5; ++trial) {
        SimParams p = trial == 0 ? reference_params() : testing::random_params(rng);
        p.n_init = std::max(p.n_init, 1);
        p.n_max = p.n_init;
        const HilbertSpace small(p.n_max);
        const HilbertSpace big(p.n_max + 2);
        const auto a = switching_probability(
            evolve(assemble(p, small), pure_state(small, g, p.n_init), TimeGrid{200.0, 1.0}));
        const auto b = switching_probability(
            evolve(assemble(p, big), pure_state(big, g, p.n_init), TimeGrid{200.0, 1.0}));
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(std::abs(a[k] - b[k]) < 1e-10);
        }
    }
}

TEST_CASE("lab frame with full tunneling tracks the rotating frame", "[propagation]") {
    SimParams rot = reference_params();
    SimParams lab = rot;
    lab.frame = FrameMode::lab_full;
    const HilbertSpace s(1);
    Tolerances lab_tol;
    lab_tol.max_step_ns = 1e-3;
    const auto pr = switching_probability(
        evolve(assemble(rot, s), pure_state(s, g, 1), TimeGrid{20.0, 0.25}));
    const auto pl = switching_probability(
        evolve(assemble(lab, s), pure_state(s, g, 1), TimeGrid{20.0, 0.25}, lab_tol));
    double worst = 0.0;
    for (std::size_t k = 0; k < pr.size(); ++k) {
        worst = std::max(worst, std::abs(pr[k] - pl[k]));
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("stiff problems are reported", "[propagation]") {
    SimParams p = reference_params();
    p.gamma = 1e10;
    const HilbertSpace s(1);
    CHECK_THROWS_AS(evolve_to(assemble(p, s), pure_state(s, g, 1), 10.0), StiffnessError);
}

TEST_CASE("dimension guards", "[propagation]") {
    SimParams p = reference_params();
    p.n_max = 32;
    const HilbertSpace s(32);
    CHECK(s.dim() == 66);
    const Liouvillian l = assemble(p, s);
    CHECK_THROWS_AS(exact_state(l, pure_state(s, g, 1), 1.0), DimensionError);
    CHECK_THROWS_AS(evolve_to(l, CMatrix::Identity(4, 4), 1.0), DimensionError);

    const std::vector<double> backwards = {2.0, 1.0};
    const HilbertSpace small(1);
    CHECK_THROWS_AS(evolve_at(assemble(p, small), pure_state(small, g, 1), backwards), RangeError);
}
