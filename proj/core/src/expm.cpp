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

#include "jjphotond/expm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/LU>

namespace jjphotond {

namespace {

double norm1(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Largest ||A||_1 for which the degree-m Pade approximant reaches double precision.
constexpr std::array<double, 5> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                         9.504178996162932e-1, 2.097847961257068e0,
                                         5.371920351148152e0};

struct PadeTerms {
    CMatrix u;  // odd part
    CMatrix v;  // even part
};

template <std::size_t N>
PadeTerms pade_low(const CMatrix& a, const std::array<double, N>& b) {
    // Degrees 3, 5, 7, 9: U = A sum b_{2k+1} A^{2k}, V = sum b_{2k} A^{2k}.
    const Eigen::Index n = a.rows();
    const CMatrix a2 = a * a;
    CMatrix power = CMatrix::Identity(n, n);
    CMatrix odd = b[1] * power;
    CMatrix even = b[0] * power;
    for (std::size_t k = 2; k + 1 < N + 1; k += 2) {
        power = power * a2;
        even += b[k] * power;
        odd += b[k + 1] * power;
    }
    return {a * odd, even};
}

PadeTerms pade13(const CMatrix& a) {
    constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const Eigen::Index n = a.rows();
    const CMatrix identity = CMatrix::Identity(n, n);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    const CMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                            b[3] * a2 + b[1] * identity;
    CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                b[0] * identity;
    return {a * u_inner, std::move(v)};
}

CMatrix solve_pade(const PadeTerms& terms) {
    // r = (V - U)^{-1} (V + U)
    const CMatrix numerator = terms.v + terms.u;
    const CMatrix denominator = terms.v - terms.u;
    return denominator.partialPivLu().solve(numerator);
}

}  // namespace

CMatrix expm(const CMatrix& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return a;
    }
    const double norm = norm1(a);
    if (norm <= theta[0]) {
        return solve_pade(pade_low(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}));
    }
    if (norm <= theta[1]) {
        return solve_pade(
            pade_low(a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}));
    }
    if (norm <= theta[2]) {
        return solve_pade(pade_low(a, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0,
                                                            277200.0, 25200.0, 1512.0, 56.0,
                                                            1.0}));
    }
    if (norm <= theta[3]) {
        return solve_pade(pade_low(
            a, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                      30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0}));
    }

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta[4]))));
    const CMatrix scaled = a / std::ldexp(1.0, squarings);
    CMatrix result = solve_pade(pade13(scaled));
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

}  // namespace jjphotond
