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

#include "jjphotond/density.hpp"

#include <Eigen/Eigenvalues>

namespace jjphotond {

double trace_real(const CMatrix& rho) { return rho.trace().real(); }

double hermiticity_error(const CMatrix& rho) {
    if (rho.size() == 0) {
        return 0.0;
    }
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix& rho) {
    const CMatrix hermitian = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

void symmetrize(CMatrix& rho) {
    const CMatrix adjoint = rho.adjoint();
    rho = 0.5 * (rho + adjoint);
}

CVector vectorize(const CMatrix& rho) {
    // Eigen storage is column-major, so the raw buffer is already column-stacked.
    return Eigen::Map<const CVector>(rho.data(), rho.size());
}

CMatrix unvectorize(const CVector& v, Eigen::Index dim) {
    return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

}  // namespace jjphotond
