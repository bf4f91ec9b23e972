#include <benchmark/benchmark.h>

#include "detsolve/solver.hpp"

using namespace detsolve;

namespace {

void BM_FieldMulInv(benchmark::State& state) {
    FpField F;
    Rng rng(1);
    Fp a = rng.next_fp_nonzero(F), b = rng.next_fp_nonzero(F);
    for (auto _ : state) {
        a = F.mul(a, b);
        b = F.inv(a);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_FieldMulInv);

void BM_SolveLinear(benchmark::State& state) {
    FpField F;
    Rng rng(2);
    const size_t n = static_cast<size_t>(state.range(0));
    Mat<Fp> A(n, n, F.zero());
    std::vector<Fp> b(n);
    for (auto& e : A.a) e = rng.next_fp(F);
    for (auto& e : b) e = rng.next_fp(F);
    for (auto _ : state) {
        auto r = solve_linear(F, A, b);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SolveLinear)->Arg(4)->Arg(16)->Arg(64);

void BM_PolyGcd(benchmark::State& state) {
    FpField F;
    Rng rng(3);
    const int d = static_cast<int>(state.range(0));
    UPoly a, b;
    for (int i = 0; i <= d; ++i) a.push_back(rng.next_fp(F));
    for (int i = 0; i < d; ++i) b.push_back(rng.next_fp(F));
    a.back() = F.one();
    b.back() = F.one();
    for (auto _ : state) {
        auto g = poly_gcd(F, a, b);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_PolyGcd)->Arg(16)->Arg(64)->Arg(256);

void BM_MinorsEval(benchmark::State& state) {
    FpField F;
    auto spec = parse_problem(
        "vars x1 x2\nmatrix 2 3\nx1^2 - x2 | x1 + x2 | x2^2 - 1\n"
        "x1*x2 | x1 - x2 + 1 | x1^2 + x2^2\n");
    Slp target = target_system(spec);
    Rng rng(4);
    std::vector<Fp> in = {rng.next_fp(F), rng.next_fp(F)};
    for (auto _ : state) {
        auto out = slp_eval(target, F, std::span<const Fp>(in));
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_MinorsEval);

void BM_QuotientSeriesMul(benchmark::State& state) {
    FpField F;
    Rng rng(5);
    const size_t d = static_cast<size_t>(state.range(0));
    const size_t prec = static_cast<size_t>(state.range(1));
    UPoly w;
    for (size_t i = 0; i < d; ++i) w.push_back(rng.next_fp(F));
    w.push_back(F.one());
    QuotRing A(F, w);
    SeriesRing<QuotRing> S(A, prec);
    SeriesRing<QuotRing>::Elem a(prec), b(prec);
    for (size_t t = 0; t < prec; ++t) {
        UPoly c1, c2;
        for (size_t i = 0; i < d; ++i) {
            c1.push_back(rng.next_fp(F));
            c2.push_back(rng.next_fp(F));
        }
        poly_trim(c1);
        poly_trim(c2);
        a[t] = c1;
        b[t] = c2;
    }
    for (auto _ : state) {
        auto r = S.mul(a, b);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_QuotientSeriesMul)->Args({4, 9})->Args({12, 25})->Args({12, 55});

void BM_Bounds(benchmark::State& state) {
    DegreeProfile prof;
    prof.p = 3;
    prof.q = 4;
    prof.s = 0;
    prof.n = 2;
    prof.cdeg = {2, 1, 5, 7};
    prof.rdeg = {7, 7, 7};
    for (auto _ : state) {
        auto b = compute_bounds(prof);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_Bounds);

void BM_SolveUnivariateQuadratic(benchmark::State& state) {
    auto spec = parse_problem("vars x1\nmatrix 1 1\nx1^2 - 4\n");
    spec.options.seed = 5;
    for (auto _ : state) {
        auto rep = solve(spec);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_SolveUnivariateQuadratic);

void BM_SolveMixed2x3(benchmark::State& state) {
    auto spec = parse_problem(
        "vars x1 x2\nmatrix 2 3\nx1^2 - x2 | x1 + x2 | x2^2 - 1\n"
        "x1*x2 | x1 - x2 + 1 | x1^2 + x2^2\n");
    spec.options.seed = 7;
    for (auto _ : state) {
        auto rep = solve(spec);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_SolveMixed2x3);

}  // namespace

BENCHMARK_MAIN();
