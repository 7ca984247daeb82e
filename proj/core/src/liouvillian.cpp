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

#include "jjphotond/liouvillian.hpp"

#include <cmath>
#include <string>

#include "jjphotond/errors.hpp"

namespace jjphotond {

namespace {

constexpr Complex imag_unit{0.0, 1.0};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
    if (n_max < 0) {
        throw RangeError("photon truncation n_max must be >= 0");
    }
}

Eigen::Index HilbertSpace::index(JunctionLevel level, int photons) const {
    if (photons < 0 || photons > n_max_) {
        throw RangeError("photon number " + std::to_string(photons) + " outside 0.." +
                         std::to_string(n_max_));
    }
    return 2 * static_cast<Eigen::Index>(photons) + static_cast<Eigen::Index>(level);
}

std::pair<JunctionLevel, int> HilbertSpace::state(Eigen::Index index) const {
    if (index < 0 || index >= dim()) {
        throw RangeError("basis index out of range");
    }
    return {static_cast<JunctionLevel>(index % 2), static_cast<int>(index / 2)};
}

int HilbertSpace::excitation(Eigen::Index index) const {
    const auto [level, photons] = state(index);
    return photons + static_cast<int>(level);
}

HilbertSpace build_space(int n_max) { return HilbertSpace(n_max); }

CMatrix annihilation(const HilbertSpace& space) {
    CMatrix a = CMatrix::Zero(space.dim(), space.dim());
    for (int n = 1; n <= space.n_max(); ++n) {
        const double amplitude = std::sqrt(static_cast<double>(n));
        for (auto level : {JunctionLevel::ground, JunctionLevel::excited}) {
            a(space.index(level, n - 1), space.index(level, n)) = amplitude;
        }
    }
    return a;
}

CMatrix sigma_minus(const HilbertSpace& space) {
    CMatrix s = CMatrix::Zero(space.dim(), space.dim());
    for (int n = 0; n <= space.n_max(); ++n) {
        s(space.index(JunctionLevel::ground, n), space.index(JunctionLevel::excited, n)) = 1.0;
    }
    return s;
}

CMatrix projector(const HilbertSpace& space, JunctionLevel level) {
    CMatrix p = CMatrix::Zero(space.dim(), space.dim());
    for (int n = 0; n <= space.n_max(); ++n) {
        const auto i = space.index(level, n);
        p(i, i) = 1.0;
    }
    return p;
}

CMatrix pure_state(const HilbertSpace& space, JunctionLevel level, int photons) {
    CMatrix rho = CMatrix::Zero(space.dim(), space.dim());
    const auto i = space.index(level, photons);
    rho(i, i) = 1.0;
    return rho;
}

CMatrix build_hamiltonian(const SimParams& params, const HilbertSpace& space) {
    const CMatrix a = annihilation(space);
    const CMatrix sm = sigma_minus(space);
    const CMatrix pe = projector(space, JunctionLevel::excited);
    const CMatrix coupling = 0.5 * params.omega_rabi * (a.adjoint() * sm + a * sm.adjoint());

    if (params.frame == FrameMode::rotating_secular) {
        return -params.delta * pe + coupling;
    }
    const CMatrix identity = CMatrix::Identity(space.dim(), space.dim());
    return params.omega_r() * (a.adjoint() * a + 0.5 * identity) + params.omega_eg * pe + coupling;
}

CMatrix LindbladTerm::apply(const CMatrix& rho) const {
    const CMatrix number = jump.adjoint() * jump;
    return rate * (jump * rho * jump.adjoint() - 0.5 * (number * rho + rho * number));
}

DampingDissipators build_damping_dissipators(const SimParams& params, const HilbertSpace& space) {
    return {LindbladTerm{params.kappa, annihilation(space)},
            LindbladTerm{params.gamma, sigma_minus(space)}};
}

CMatrix TunnelingTerm::apply(const CMatrix& rho) const { return -0.5 * (theta * rho + rho * theta); }

TunnelingTerm build_tunneling(const SimParams& params, const HilbertSpace& space,
                              TunnelingMode mode) {
    CMatrix theta = params.gamma_e * projector(space, JunctionLevel::excited) +
                    params.gamma_g * projector(space, JunctionLevel::ground);
    if (mode == TunnelingMode::full) {
        const CMatrix sm = sigma_minus(space);
        theta += std::sqrt(params.gamma_e * params.gamma_g) * (sm + sm.adjoint());
    }
    return {mode, std::move(theta)};
}

TunnelingMode tunneling_mode_for(FrameMode frame) {
    // The cross terms only survive in the lab frame.
    return frame == FrameMode::lab_full ? TunnelingMode::full : TunnelingMode::secular;
}

Liouvillian::Liouvillian(CMatrix hamiltonian, DampingDissipators damping, TunnelingTerm tunneling)
    : hamiltonian_(std::move(hamiltonian)),
      damping_(std::move(damping)),
      tunneling_(std::move(tunneling)) {
    const CMatrix& a = damping_.cavity.jump;
    const CMatrix& sm = damping_.junction.jump;
    const CMatrix decay = damping_.cavity.rate * (a.adjoint() * a) +
                          damping_.junction.rate * (sm.adjoint() * sm) + tunneling_.theta;
    effective_hamiltonian_ = hamiltonian_ - 0.5 * imag_unit * decay;
    effective_adjoint_ = effective_hamiltonian_.adjoint();
}

void Liouvillian::apply(const CMatrix& rho, CMatrix& out) const {
    // -i (H_eff rho - rho H_eff^dag) + sum_k rate_k A_k rho A_k^dag
    out.noalias() = -imag_unit * (effective_hamiltonian_ * rho);
    out.noalias() += imag_unit * (rho * effective_adjoint_);
    for (const LindbladTerm* term : {&damping_.cavity, &damping_.junction}) {
        if (term->rate != 0.0) {
            out.noalias() += term->rate * (term->jump * rho * term->jump.adjoint());
        }
    }
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
    CMatrix out(rho.rows(), rho.cols());
    apply(rho, out);
    return out;
}

CMatrix Liouvillian::dense() const {
    // vec(A X B) = (B^T kron A) vec(X) for column stacking.
    const Eigen::Index d = dim();
    const CMatrix identity = CMatrix::Identity(d, d);
    CMatrix out = -imag_unit * (kron(identity, hamiltonian_) - kron(hamiltonian_.transpose(), identity));
    for (const LindbladTerm* term : {&damping_.cavity, &damping_.junction}) {
        const CMatrix& jump = term->jump;
        const CMatrix number = jump.adjoint() * jump;
        out += term->rate * (kron(jump.conjugate(), jump) - 0.5 * kron(identity, number) -
                             0.5 * kron(number.transpose(), identity));
    }
    out -= 0.5 * (kron(identity, tunneling_.theta) + kron(tunneling_.theta.transpose(), identity));
    return out;
}

Liouvillian assemble(const SimParams& params, const HilbertSpace& space) {
    return assemble(params, space, tunneling_mode_for(params.frame));
}

Liouvillian assemble(const SimParams& params, const HilbertSpace& space, TunnelingMode mode) {
    return Liouvillian(build_hamiltonian(params, space), build_damping_dissipators(params, space),
                       build_tunneling(params, space, mode));
}

}  // namespace jjphotond
