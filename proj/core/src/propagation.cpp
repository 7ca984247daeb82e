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

#include "jjphotond/propagation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "jjphotond/errors.hpp"
#include "jjphotond/expm.hpp"

namespace jjphotond {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double safety = 0.9;
constexpr double max_growth = 5.0;
constexpr double max_shrink = 0.2;

class DormandPrince {
public:
    DormandPrince(const Liouvillian& liouvillian, const Tolerances& tol)
        : liouvillian_(liouvillian), tol_(tol) {
        const Eigen::Index d = liouvillian.dim();
        for (auto& k : k_) {
            k.resize(d, d);
        }
        stage_.resize(d, d);
        next_.resize(d, d);
        error_.resize(d, d);
    }

    /// Advances `rho` from t to exactly `target`.
    void advance(CMatrix& rho, double& t, double target, StepStats& stats) {
        if (!(h_ > 0.0)) {
            h_ = initial_step(rho, target - t);
        }
        while (t < target) {
            const double remaining = target - t;
            double h = std::min(h_, remaining);
            if (tol_.max_step_ns > 0.0) {
                h = std::min(h, tol_.max_step_ns);
            }
            const bool lands = (h == remaining);

            const double err = attempt(rho, h);
            if (err <= 1.0) {
                ++stats.accepted;
                const double drift = hermiticity_error(next_);
                stats.max_hermiticity_drift = std::max(stats.max_hermiticity_drift, drift);
                if (drift > InvariantLimits::failure) {
                    throw IntegrationError("Hermiticity drift " + std::to_string(drift) +
                                           " exceeds 1e-6 at t = " + std::to_string(t) + " ns");
                }
                rho = 0.5 * (next_ + next_.adjoint());
                t = lands ? target : t + h;
                const double factor =
                    err == 0.0 ? max_growth
                               : std::clamp(safety * std::pow(err, -0.2), max_shrink, max_growth);
                // A step clamped to hit an output time says nothing about the natural size.
                if (!lands || factor < 1.0) {
                    h_ = h * factor;
                }
            } else {
                ++stats.rejected;
                h_ = h * std::clamp(safety * std::pow(err, -0.2), max_shrink, 1.0);
                if (h_ < InvariantLimits::min_step_ns) {
                    std::ostringstream msg;
                    msg << "step size underflow (h = " << h_ << " ns at t = " << t
                        << " ns); the problem looks stiff, use the exact propagator";
                    throw StiffnessError(msg.str());
                }
            }
        }
    }

private:
    double scaled_max(const CMatrix& value, const CMatrix& reference) const {
        double out = 0.0;
        for (Eigen::Index i = 0; i < value.size(); ++i) {
            const double scale = tol_.abs + tol_.rel * std::abs(reference(i));
            out = std::max(out, std::abs(value(i)) / scale);
        }
        return out;
    }

    double initial_step(const CMatrix& rho, double span) {
        CMatrix f0 = liouvillian_.apply(rho);
        const double d0 = scaled_max(rho, rho);
        const double d1 = scaled_max(f0, rho);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span > 0.0 ? span : h0);
        const CMatrix probe = rho + h0 * f0;
        const CMatrix f1 = liouvillian_.apply(probe);
        const double d2 = scaled_max(f1 - f0, rho) / h0;
        const double dmax = std::max(d1, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        return std::min(100.0 * h0, h1);
    }

    /// One trial step of size h; fills next_ and returns the scaled error norm.
    double attempt(const CMatrix& rho, double h) {
        liouvillian_.apply(rho, k_[0]);

        stage_ = rho + h * (a21 * k_[0]);
        liouvillian_.apply(stage_, k_[1]);

        stage_ = rho + h * (a31 * k_[0] + a32 * k_[1]);
        liouvillian_.apply(stage_, k_[2]);

        stage_ = rho + h * (a41 * k_[0] + a42 * k_[1] + a43 * k_[2]);
        liouvillian_.apply(stage_, k_[3]);

        stage_ = rho + h * (a51 * k_[0] + a52 * k_[1] + a53 * k_[2] + a54 * k_[3]);
        liouvillian_.apply(stage_, k_[4]);

        stage_ = rho + h * (a61 * k_[0] + a62 * k_[1] + a63 * k_[2] + a64 * k_[3] + a65 * k_[4]);
        liouvillian_.apply(stage_, k_[5]);

        next_ = rho + h * (b1 * k_[0] + b3 * k_[2] + b4 * k_[3] + b5 * k_[4] + b6 * k_[5]);
        liouvillian_.apply(next_, k_[6]);

        error_ = h * (e1 * k_[0] + e3 * k_[2] + e4 * k_[3] + e5 * k_[4] + e6 * k_[5] + e7 * k_[6]);

        double err = 0.0;
        for (Eigen::Index i = 0; i < error_.size(); ++i) {
            const double scale =
                tol_.abs + tol_.rel * std::max(std::abs(rho(i)), std::abs(next_(i)));
            err = std::max(err, std::abs(error_(i)) / scale);
        }
        if (!std::isfinite(err)) {
            return std::numeric_limits<double>::infinity();
        }
        return err;
    }

    const Liouvillian& liouvillian_;
    Tolerances tol_;
    double h_ = 0.0;
    std::array<CMatrix, 7> k_;
    CMatrix stage_;
    CMatrix next_;
    CMatrix error_;
};

void check_snapshot(const CMatrix& rho, double t, double previous_trace, bool enforce_positivity,
                    StepStats& stats) {
    const double trace = trace_real(rho);
    stats.max_trace_uptick = std::max(stats.max_trace_uptick, trace - previous_trace);
    if (trace - previous_trace > InvariantLimits::failure) {
        throw IntegrationError("trace increased by " + std::to_string(trace - previous_trace) +
                               " at t = " + std::to_string(t) + " ns");
    }
    const double lowest = min_eigenvalue(rho);
    stats.min_eigenvalue = std::min(stats.min_eigenvalue, lowest);
    if (enforce_positivity && lowest < InvariantLimits::positivity) {
        std::ostringstream msg;
        msg << "density matrix lost positivity: eigenvalue " << lowest << " at t = " << t
            << " ns";
        throw IntegrationError(msg.str());
    }
}

}  // namespace

void StepStats::merge(const StepStats& other) {
    accepted += other.accepted;
    rejected += other.rejected;
    max_hermiticity_drift = std::max(max_hermiticity_drift, other.max_hermiticity_drift);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
    max_trace_uptick = std::max(max_trace_uptick, other.max_trace_uptick);
}

Trajectory evolve_at(const Liouvillian& liouvillian, const CMatrix& rho0,
                     std::span<const double> times, const Tolerances& tol) {
    if (rho0.rows() != liouvillian.dim() || rho0.cols() != liouvillian.dim()) {
        throw DimensionError("initial state does not match the Liouvillian dimension");
    }
    Trajectory out;
    out.times.reserve(times.size());
    out.states.reserve(times.size());

    const double initial_min = min_eigenvalue(rho0);
    const bool enforce_positivity = initial_min >= InvariantLimits::positivity;
    out.stats.min_eigenvalue = initial_min;

    DormandPrince stepper(liouvillian, tol);
    CMatrix rho = rho0;
    double t = 0.0;
    double previous_trace = trace_real(rho0);
    for (const double target : times) {
        if (!(target >= t)) {
            throw RangeError("output times must be non-decreasing and >= 0");
        }
        stepper.advance(rho, t, target, out.stats);
        check_snapshot(rho, t, previous_trace, enforce_positivity, out.stats);
        previous_trace = trace_real(rho);
        out.times.push_back(target);
        out.states.push_back(rho);
    }
    return out;
}

Trajectory evolve(const Liouvillian& liouvillian, const CMatrix& rho0, const TimeGrid& grid,
                  const Tolerances& tol) {
    const std::size_t count = grid.count();
    if (count == 0) {
        throw RangeError("time grid is empty (stride must be > 0 and t_end >= 0)");
    }
    std::vector<double> times(count);
    for (std::size_t k = 0; k < count; ++k) {
        times[k] = grid.time(k);
    }
    return evolve_at(liouvillian, rho0, times, tol);
}

CMatrix evolve_to(const Liouvillian& liouvillian, const CMatrix& rho0, double t,
                  const Tolerances& tol) {
    const double target = t;
    return evolve_at(liouvillian, rho0, std::span<const double>(&target, 1), tol).states.back();
}

CMatrix exact_state(const Liouvillian& liouvillian, const CMatrix& rho0, double t) {
    return ExactPropagator(liouvillian, t).step(rho0);
}

ExactPropagator::ExactPropagator(const Liouvillian& liouvillian, double dt)
    : dim_(liouvillian.dim()) {
    if (dim_ > exact_state_max_dim) {
        throw DimensionError("exact propagator limited to dim <= 64 (dim^2 <= 4096), got dim " +
                             std::to_string(dim_));
    }
    propagator_ = expm(liouvillian.dense() * dt);
}

CMatrix ExactPropagator::step(const CMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw DimensionError("state does not match the propagator dimension");
    }
    return unvectorize(propagator_ * vectorize(rho), dim_);
}

}  // namespace jjphotond
