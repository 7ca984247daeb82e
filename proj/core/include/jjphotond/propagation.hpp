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

#include <cstddef>
#include <span>
#include <vector>

#include "jjphotond/liouvillian.hpp"

namespace jjphotond {

/// Thresholds of the trajectory health checks.
struct InvariantLimits {
    static constexpr double min_step_ns = 1e-8;
    static constexpr double hermiticity = 1e-10;
    static constexpr double positivity = -1e-8;
    static constexpr double trace_uptick = 1e-10;
    /// Any drift beyond this aborts the integration.
    static constexpr double failure = 1e-6;
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    /// Largest |rho - rho^dagger| seen right before re-symmetrization.
    double max_hermiticity_drift = 0.0;
    /// Smallest eigenvalue over all snapshots.
    double min_eigenvalue = 0.0;
    /// Largest Tr rho(t_{k+1}) - Tr rho(t_k) over consecutive snapshots (<= 0 when monotone).
    double max_trace_uptick = -1.0;

    bool hermitian_ok() const { return max_hermiticity_drift <= InvariantLimits::hermiticity; }
    bool positive_ok() const { return min_eigenvalue >= InvariantLimits::positivity; }
    bool trace_monotone() const { return max_trace_uptick <= InvariantLimits::trace_uptick; }

    void merge(const StepStats& other);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CMatrix> states;
    StepStats stats;
};

/// Dormand-Prince 5(4) with adaptive steps, landing exactly on every output time.
/// After each accepted step rho is replaced by (rho + rho^dagger)/2.
///
/// Throws StiffnessError if the step size drops below 1e-8 ns and IntegrationError
/// when a snapshot violates trace, Hermiticity or positivity beyond the limits.
Trajectory evolve(const Liouvillian& liouvillian, const CMatrix& rho0, const TimeGrid& grid,
                  const Tolerances& tol = {});

/// Same integrator, snapshots at arbitrary non-decreasing times >= 0.
Trajectory evolve_at(const Liouvillian& liouvillian, const CMatrix& rho0,
                     std::span<const double> times, const Tolerances& tol = {});

CMatrix evolve_to(const Liouvillian& liouvillian, const CMatrix& rho0, double t,
                  const Tolerances& tol = {});

/// Largest dim for which the dense oracle is allowed (dim^2 <= 4096).
inline constexpr Eigen::Index exact_state_max_dim = 64;

/// vec(rho(t)) = exp(L t) vec(rho0) with the dense superoperator.
/// Throws DimensionError above exact_state_max_dim.
CMatrix exact_state(const Liouvillian& liouvillian, const CMatrix& rho0, double t);

/// Reusable dense propagator exp(L dt) for stepping on a uniform grid.
class ExactPropagator {
public:
    ExactPropagator(const Liouvillian& liouvillian, double dt);
    CMatrix step(const CMatrix& rho) const;

private:
    Eigen::Index dim_;
    CMatrix propagator_;
};

}  // namespace jjphotond
