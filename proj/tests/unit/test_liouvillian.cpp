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

#include "jjphotond/errors.hpp"
#include "jjphotond/liouvillian.hpp"
#include "test_support.hpp"

using namespace jjphotond;
using Catch::Approx;

namespace {

constexpr auto g = JunctionLevel::ground;
constexpr auto e = JunctionLevel::excited;

SimParams sample_params() {
    SimParams p;
    p.omega_eg = two_pi * 4.8;
    p.omega_rabi = two_pi * 0.2;
    p.delta = 0.3;
    p.kappa = 1e-3;
    p.gamma = 0.1;
    p.gamma_e = 0.073;
    p.gamma_g = 1.4975593879178550e-4;
    p.n_init = 1;
    p.n_max = 2;
    return p;
}

}  // namespace

TEST_CASE("basis ordering is 2n + j", "[space]") {
    const HilbertSpace s(1);
    CHECK(s.dim() == 4);
    CHECK(s.index(g, 0) == 0);
    CHECK(s.index(e, 0) == 1);
    CHECK(s.index(g, 1) == 2);
    CHECK(s.index(e, 1) == 3);
    CHECK(build_space(3).dim() == 8);
    CHECK(s.state(3) == std::pair{e, 1});
    CHECK(s.excitation(3) == 2);
    CHECK(s.excitation(1) == 1);
    CHECK(s.excitation(2) == 1);
    CHECK_THROWS_AS(s.index(g, 2), RangeError);
    CHECK_THROWS_AS(s.state(4), RangeError);
    CHECK_THROWS_AS(HilbertSpace(-1), RangeError);
}

TEST_CASE("ladder operators", "[operators]") {
    const HilbertSpace s(3);
    const CMatrix a = annihilation(s);
    CHECK(a(s.index(g, 1), s.index(g, 2)) == Complex(std::sqrt(2.0), 0.0));
    CHECK(a(s.index(e, 2), s.index(e, 3)) == Complex(std::sqrt(3.0), 0.0));
    const CMatrix number = a.adjoint() * a;
    for (int n = 0; n <= 3; ++n) {
        CHECK(number(s.index(e, n), s.index(e, n)).real() == Approx(n));
    }
    const CMatrix sm = sigma_minus(s);
    CHECK(max_abs_diff(sm.adjoint() * sm, projector(s, e)) == 0.0);
    CHECK(max_abs_diff(projector(s, e) + projector(s, g), CMatrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("rotating-frame Hamiltonian", "[hamiltonian]") {
    SimParams p = sample_params();
    p.n_max = 1;
    const HilbertSpace s(1);
    const CMatrix h = build_hamiltonian(p, s);
    CHECK(h(s.index(e, 0), s.index(g, 1)) == Complex(p.omega_rabi / 2.0, 0.0));
    CHECK(h(s.index(g, 1), s.index(e, 0)) == Complex(p.omega_rabi / 2.0, 0.0));
    CHECK(h(s.index(e, 0), s.index(e, 0)).real() == -p.delta);
    CHECK(h(s.index(g, 0), s.index(g, 0)).real() == 0.0);
    CHECK(hermiticity_error(h) == 0.0);

    // on resonance the one-excitation doublet is split by Omega
    p.delta = 0.0;
    const Eigen::SelfAdjointEigenSolver<CMatrix> solver(build_hamiltonian(p, s));
    const auto& ev = solver.eigenvalues();
    CHECK(ev(ev.size() - 1) - ev(0) == Approx(p.omega_rabi).epsilon(1e-14));
}

TEST_CASE("lab-frame Hamiltonian", "[hamiltonian]") {
    SimParams p = sample_params();
    p.frame = FrameMode::lab_full;
    const HilbertSpace s(2);
    const CMatrix h = build_hamiltonian(p, s);
    CHECK(h(s.index(g, 0), s.index(g, 0)).real() == Approx(0.5 * p.omega_r()));
    CHECK(h(s.index(e, 2), s.index(e, 2)).real() == Approx(2.5 * p.omega_r() + p.omega_eg));
    CHECK(h(s.index(e, 1), s.index(g, 2)).real() == Approx(p.omega_rabi / 2.0 * std::sqrt(2.0)));
    CHECK(p.omega_r() == Approx(p.omega_eg + p.delta));
}

TEST_CASE("damping dissipators", "[dissipator]") {
    const SimParams p = sample_params();
    const HilbertSpace s(2);
    const DampingDissipators d = build_damping_dissipators(p, s);

    // Excited junction decays at gamma into the ground state.
    const CMatrix rho_e = pure_state(s, e, 0);
    const CMatrix out = d.junction.apply(rho_e);
    CHECK(out(s.index(g, 0), s.index(g, 0)).real() == Approx(p.gamma));
    CHECK(out(s.index(e, 0), s.index(e, 0)).real() == Approx(-p.gamma));
    CHECK(std::abs(out.trace()) < 1e-15);

    // Two photons decay at 2 kappa.
    const CMatrix cav = d.cavity.apply(pure_state(s, g, 2));
    CHECK(cav(s.index(g, 1), s.index(g, 1)).real() == Approx(2.0 * p.kappa));
    CHECK(cav(s.index(g, 2), s.index(g, 2)).real() == Approx(-2.0 * p.kappa));

    // Coherences between |g,0> and |e,0> decay at gamma/2.
    CMatrix coh = CMatrix::Zero(s.dim(), s.dim());
    coh(0, 1) = 1.0;
    CHECK(d.junction.apply(coh)(0, 1).real() == Approx(-p.gamma / 2.0));
}

TEST_CASE("tunneling operator", "[tunneling]") {
    const SimParams p = sample_params();
    const HilbertSpace s(2);
    const TunnelingTerm sec = build_tunneling(p, s, TunnelingMode::secular);
    CHECK(max_abs_diff(sec.theta, p.gamma_e * projector(s, e) + p.gamma_g * projector(s, g)) == 0.0);

    const TunnelingTerm full = build_tunneling(p, s, TunnelingMode::full);
    const double cross = std::sqrt(p.gamma_e * p.gamma_g);
    const double block[2][2] = {{p.gamma_g, cross}, {cross, p.gamma_e}};
    for (int n = 0; n <= 2; ++n) {
        for (int m = 0; m <= 2; ++m) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    const Complex got =
                        full.theta(s.index(static_cast<JunctionLevel>(j), n), s.index(static_cast<JunctionLevel>(k), m));
                    const double expected = n == m ? block[j][k] : 0.0;
                    CHECK(got == Complex(expected, 0.0));
                }
            }
        }
    }
    // Rank one per photon block: the cross term makes Theta singular in each block.
    CHECK(std::abs(block[0][0] * block[1][1] - block[0][1] * block[1][0]) < 1e-18);

    CHECK(tunneling_mode_for(FrameMode::lab_full) == TunnelingMode::full);
    CHECK(tunneling_mode_for(FrameMode::rotating_secular) == TunnelingMode::secular);
}

TEST_CASE("dense superoperator matches the matrix-free generator", "[liouvillian][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        SimParams p = testing::random_params(rng);
        p.n_max = trial % 3;
        const auto mode = trial % 2 ? TunnelingMode::full : TunnelingMode::secular;
        if (trial % 4 == 3) {
            p.frame = FrameMode::lab_full;
        }
        const HilbertSpace s(p.n_max);
        const Liouvillian l = assemble(p, s, mode);
        const CMatrix rho = testing::random_density(s.dim(), rng);
        const CMatrix x = testing::random_hermitian(s.dim(), rng) + Complex(0, 1) * testing::random_hermitian(s.dim(), rng);
        for (const CMatrix* in : {&rho, &x}) {
            const CMatrix free = l.apply(*in);
            const CMatrix dense = unvectorize(l.dense() * vectorize(*in), s.dim());
            INFO("trial " << trial);
            CHECK(max_abs_diff(free, dense) <= 1e-12 * std::max(1.0, free.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("generator structure", "[liouvillian][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        SimParams p = testing::random_params(rng);
        p.n_max = 1 + trial % 3;
        const HilbertSpace s(p.n_max);
        const auto mode = trial % 2 ? TunnelingMode::full : TunnelingMode::secular;
        const Liouvillian l = assemble(p, s, mode);
        const CMatrix rho = testing::random_density(s.dim(), rng);
        const CMatrix out = l.apply(rho);
        INFO("trial " << trial);

        // Hermiticity is preserved.
        CHECK(hermiticity_error(out) < 1e-12);

        // The only trace loss is tunneling.
        const Complex leak = (l.leak_operator() * rho).trace();
        CHECK(std::abs(out.trace() + leak) < 1e-12);

        // Without tunneling the generator is trace-preserving.
        SimParams closed = p;
        closed.gamma_e = 0.0;
        closed.gamma_g = 0.0;
        CHECK(std::abs(assemble(closed, s, mode).apply(rho).trace()) < 1e-12);

        // Secular generator never mixes excitation-number coherences into populations.
        if (mode == TunnelingMode::secular) {
            CMatrix block_diag = CMatrix::Zero(s.dim(), s.dim());
            for (Eigen::Index i = 0; i < s.dim(); ++i) {
                for (Eigen::Index j = 0; j < s.dim(); ++j) {
                    if (s.excitation(i) == s.excitation(j)) {
                        block_diag(i, j) = rho(i, j);
                    }
                }
            }
            const CMatrix o = l.apply(block_diag);
            for (Eigen::Index i = 0; i < s.dim(); ++i) {
                for (Eigen::Index j = 0; j < s.dim(); ++j) {
                    if (s.excitation(i) != s.excitation(j)) {
                        CHECK(std::abs(o(i, j)) < 1e-14);
                    }
                }
            }
        }
    }
}

TEST_CASE("vectorization is column-major", "[density]") {
    CMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const CVector v = vectorize(m);
    CHECK(v(1) == Complex(3.0, 0.0));
    CHECK(v(2) == Complex(2.0, 0.0));
    CHECK(max_abs_diff(unvectorize(v, 2), m) == 0.0);
    CHECK(trace_real(m) == 5.0);
    CHECK(hermiticity_error(m) == 1.0);
    symmetrize(m);
    CHECK(hermiticity_error(m) == 0.0);
    CHECK(min_eigenvalue(CMatrix::Identity(3, 3)) == Approx(1.0));
}
