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

#include <complex>

#include <Eigen/Dense>

namespace jjphotond {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A density matrix is a plain CMatrix; these helpers check the physical invariants.
double trace_real(const CMatrix& rho);

/// max |rho - rho^dagger| over entries
double hermiticity_error(const CMatrix& rho);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const CMatrix& rho);

/// max |a - b| over entries
double max_abs_diff(const CMatrix& a, const CMatrix& b);

void symmetrize(CMatrix& rho);

/// Column-stacking vectorization: vec(rho)[i + dim * j] = rho(i, j).
CVector vectorize(const CMatrix& rho);
CMatrix unvectorize(const CVector& v, Eigen::Index dim);

}  // namespace jjphotond
