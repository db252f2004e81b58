#include <benchmark/benchmark.h>

#include <random>

#include "riccati/pencil.hpp"
#include "riccati/reduction.hpp"

using namespace riccati;

namespace {

PopovTriple free_parameter_triple() {
    Matrix a(3, 3), b(3, 2);
    a << 0, -4, 0, 0, 3, 0, 0, 0, -1;
    b << 0, -1, 3, 0, 0, 0;
    Matrix q = Matrix::Zero(3, 3);
    q(0, 0) = 1;
    return make_triple(a, b, q, Matrix::Zero(2, 2), Matrix::Zero(3, 2));
}

PopovTriple random_regular_triple(Index n, Index m) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    auto rand = [&](Index r, Index c) {
        Matrix x(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < c; ++j) x(i, j) = dist(rng);
        return x;
    };
    const Matrix a = 0.4 * rand(n, n);
    const Matrix b = rand(n, m);
    const Matrix c = rand(n + m, n);
    const Matrix d = rand(n + m, m);
    return make_triple(a, b, (c.transpose() * c).eval(),
                       (d.transpose() * d).eval(), c.transpose() * d);
}

void BM_ReduceChain(benchmark::State& state) {
    const PopovTriple sigma = free_parameter_triple();
    for (auto _ : state) benchmark::DoNotOptimize(reduce(sigma));
}
BENCHMARK(BM_ReduceChain);

void BM_SolveEndToEnd(benchmark::State& state) {
    const PopovTriple sigma = free_parameter_triple();
    for (auto _ : state) {
        const ReductionChain chain = reduce(sigma);
        benchmark::DoNotOptimize(lift(chain, solve_terminal(chain.terminal)));
    }
}
BENCHMARK(BM_SolveEndToEnd);

void BM_RegularDare(benchmark::State& state) {
    const PopovTriple sigma =
        random_regular_triple(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_regular_dare(sigma));
}
BENCHMARK(BM_RegularDare)->Arg(2)->Arg(4)->Arg(6);

void BM_Pinv(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> dist;
    Matrix m(state.range(0), state.range(0));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(pinv(m));
}
BENCHMARK(BM_Pinv)->Arg(8)->Arg(32);

void BM_PencilDiagnose(benchmark::State& state) {
    const PopovTriple sigma = free_parameter_triple();
    for (auto _ : state) benchmark::DoNotOptimize(diagnose(sigma));
}
BENCHMARK(BM_PencilDiagnose);

}  // namespace

BENCHMARK_MAIN();
