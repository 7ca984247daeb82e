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

#include <random>

#include <benchmark/benchmark.h>

#include "jjphotond/config.hpp"
#include "jjphotond/expm.hpp"
#include "jjphotond/metrics.hpp"
#include "jjphotond/propagation.hpp"

namespace {

using namespace jjphotond;

CMatrix random_density(Eigen::Index dim) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal;
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m(i) = Complex(normal(rng), normal(rng));
    }
    CMatrix rho = m * m.adjoint();
    return rho / rho.trace().real();
}

void BM_ApplyMatrixFree(benchmark::State& state) {
    SimParams p = baseline_preset();
    p.n_max = static_cast<int>(state.range(0));
    const HilbertSpace s(p.n_max);
    const Liouvillian l = assemble(p, s);
    const CMatrix rho = random_density(s.dim());
    CMatrix out(s.dim(), s.dim());
    for (auto _ : state) {
        l.apply(rho, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ApplyMatrixFree)->Arg(1)->Arg(3)->Arg(7);

void BM_ApplyDense(benchmark::State& state) {
    SimParams p = baseline_preset();
    p.n_max = static_cast<int>(state.range(0));
    const HilbertSpace s(p.n_max);
    const CMatrix dense = assemble(p, s).dense();
    const CVector v = vectorize(random_density(s.dim()));
    CVector out(v.size());
    for (auto _ : state) {
        out.noalias() = dense * v;
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ApplyDense)->Arg(1)->Arg(3)->Arg(7);

void BM_EfficiencyCurveBaseline(benchmark::State& state) {
    const SimParams p = baseline_preset();
    for (auto _ : state) {
        const EfficiencyCurve curve = efficiency_curve(p, 1);
        benchmark::DoNotOptimize(curve.eta.back());
    }
}
BENCHMARK(BM_EfficiencyCurveBaseline)->Unit(benchmark::kMillisecond);

void BM_ExactPropagator(benchmark::State& state) {
    SimParams p = baseline_preset();
    p.n_max = static_cast<int>(state.range(0));
    const Liouvillian l = assemble(p, HilbertSpace(p.n_max));
    for (auto _ : state) {
        const ExactPropagator step(l, 0.05);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_ExactPropagator)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_Expm(benchmark::State& state) {
    const auto dim = static_cast<Eigen::Index>(state.range(0));
    const CMatrix a = Complex(0.0, -1.0) * random_density(dim) * 40.0;
    for (auto _ : state) {
        CMatrix out = expm(a);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
