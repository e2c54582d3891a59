// Hot paths: normal-ordered multiplication, classical evaluation, and the
// fixed-step integrators.

#include <benchmark/benchmark.h>

#include "qnspace/qpoly.hpp"
#include "qnspace/simulate.hpp"
#include "qnspace/vector_field.hpp"

namespace {

using namespace qns;

/// Dense-ish element of the 2-generator algebra with the given term count.
QPoly sample_poly(int terms) {
    QPoly f(2);
    for (int k = 0; k < terms; ++k) {
        const Multidegree d{k % 7 - 3, (k * 5 + 1) % 7 - 3};
        f += QPoly::monomial(2, d, QScalar::term(k % 5 - 2, Rational(2 * k + 1, k % 3 + 1)));
    }
    return f;
}

void BM_mono_mul(benchmark::State& state) {
    const Multidegree a{3, -2};
    const Multidegree b{-1, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono_mul(a, b));
    }
}
BENCHMARK(BM_mono_mul);

void BM_poly_multiply(benchmark::State& state) {
    const QPoly f = sample_poly(static_cast<int>(state.range(0)));
    const QPoly g = sample_poly(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(f * g);
    }
}
BENCHMARK(BM_poly_multiply)->Arg(4)->Arg(16)->Arg(48);

void BM_classical_eval(benchmark::State& state) {
    const CPoly F = classicalize(sample_poly(32), 0.5);
    const double p[2] = {1.25, -0.75};
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.eval(p));
    }
}
BENCHMARK(BM_classical_eval);

void BM_integrate_rk4(benchmark::State& state) {
    const VectorField X{2, {QPoly::generator(2, 1), QPoly::generator(2, 0)}};
    const double p[2] = {1.0, -1.0};
    IntegratorConfig cfg;
    cfg.step = 1.0 / static_cast<double>(state.range(0));
    cfg.horizon = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(X, p, cfg));
    }
}
BENCHMARK(BM_integrate_rk4)->Arg(100)->Arg(1000);

void BM_equilibria(benchmark::State& state) {
    const VectorField X{2,
                        {QPoly::generator(2, 0) * QPoly::generator(2, 0) - QPoly::one(2),
                         QPoly::generator(2, 1)}};
    const Box box{{-2.0, -2.0}, {2.0, 2.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(equilibria(X, 1.0, box, 8));
    }
}
BENCHMARK(BM_equilibria);

}  // namespace

BENCHMARK_MAIN();
