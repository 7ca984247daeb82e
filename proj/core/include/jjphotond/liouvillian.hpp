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

#include <utility>

#include "jjphotond/density.hpp"
#include "jjphotond/units.hpp"

namespace jjphotond {

enum class JunctionLevel : int { ground = 0, excited = 1 };

/// Junction (x) cavity basis truncated at n_max photons.
/// |j, n> maps to index 2 n + j, so |g, n> precedes |e, n>.
class HilbertSpace {
public:
    explicit HilbertSpace(int n_max);

    int n_max() const noexcept { return n_max_; }
    Eigen::Index dim() const noexcept { return 2 * (static_cast<Eigen::Index>(n_max_) + 1); }

    Eigen::Index index(JunctionLevel level, int photons) const;
    std::pair<JunctionLevel, int> state(Eigen::Index index) const;

    /// Photon number plus junction excitation.
    int excitation(Eigen::Index index) const;

private:
    int n_max_;
};

HilbertSpace build_space(int n_max);

CMatrix annihilation(const HilbertSpace& space);
CMatrix sigma_minus(const HilbertSpace& space);
CMatrix projector(const HilbertSpace& space, JunctionLevel level);

/// |j, n><j, n|
CMatrix pure_state(const HilbertSpace& space, JunctionLevel level, int photons);

/// H / hbar in rad/ns.
/// rotating-secular: -Delta Pi_e + (Omega/2)(a^dag s_- + a s_+), frame rotating at w_r.
/// lab-full:         w_r (a^dag a + 1/2) + w_eg Pi_e + (Omega/2)(a^dag s_- + a s_+).
CMatrix build_hamiltonian(const SimParams& params, const HilbertSpace& space);

/// rate * (A rho A^dag - 1/2 {A^dag A, rho})
struct LindbladTerm {
    double rate = 0.0;
    CMatrix jump;

    CMatrix apply(const CMatrix& rho) const;
};

struct DampingDissipators {
    LindbladTerm cavity;    ///< kappa, A = a
    LindbladTerm junction;  ///< gamma, A = s_-
};

DampingDissipators build_damping_dissipators(const SimParams& params, const HilbertSpace& space);

enum class TunnelingMode { secular, full };

/// Trace-decreasing escape term -1/2 {Theta, rho} with Theta acting on the junction only:
///   secular: Theta = Gamma_e Pi_e + Gamma_g Pi_g
///   full:    Theta = Gamma_e Pi_e + Gamma_g Pi_g + sqrt(Gamma_e Gamma_g)(s_+ + s_-)
/// The same form applies to every photon-index block (n, m) of rho.
struct TunnelingTerm {
    TunnelingMode mode = TunnelingMode::secular;
    CMatrix theta;

    CMatrix apply(const CMatrix& rho) const;
};

TunnelingTerm build_tunneling(const SimParams& params, const HilbertSpace& space, TunnelingMode mode);

TunnelingMode tunneling_mode_for(FrameMode frame);

/// The master-equation generator
///   L[rho] = -i [H, rho] + L_gamma[rho] + L_kappa[rho] + L_T[rho].
/// Immutable after construction and safe to share between threads.
class Liouvillian {
public:
    Liouvillian(CMatrix hamiltonian, DampingDissipators damping, TunnelingTerm tunneling);

    Eigen::Index dim() const noexcept { return hamiltonian_.rows(); }

    /// Matrix-free application; `out` must not alias `rho`.
    void apply(const CMatrix& rho, CMatrix& out) const;
    CMatrix apply(const CMatrix& rho) const;

    /// dim^2 x dim^2 matrix acting on column-stacked vec(rho), built from Kronecker products.
    CMatrix dense() const;

    const CMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    const DampingDissipators& damping() const noexcept { return damping_; }
    const TunnelingTerm& tunneling() const noexcept { return tunneling_; }

    /// Theta; Tr L[rho] = -Tr(Theta rho).
    const CMatrix& leak_operator() const noexcept { return tunneling_.theta; }

private:
    CMatrix hamiltonian_;
    DampingDissipators damping_;
    TunnelingTerm tunneling_;
    // H - (i/2)(kappa a^dag a + gamma s_+ s_- + Theta)
    CMatrix effective_hamiltonian_;
    CMatrix effective_adjoint_;
};

Liouvillian assemble(const SimParams& params, const HilbertSpace& space);
Liouvillian assemble(const SimParams& params, const HilbertSpace& space, TunnelingMode mode);

}  // namespace jjphotond
