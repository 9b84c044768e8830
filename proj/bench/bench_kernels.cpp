#include <benchmark/benchmark.h>

#include "shimura/enumerate.hpp"
#include "shimura/quadfield.hpp"
#include "shimura/thetalift.hpp"

using namespace shimura;

namespace {

Eigen::MatrixXd bench_gram(int n) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) b(r, c) = ((r + 2 * c) % 3) - 1;
    return b.transpose() * b;
}

void BM_FinckePohst(benchmark::State& st) {
    Eigen::MatrixXd g = bench_gram(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(fincke_pohst(g, 30.0));
}

void BM_FinckePohstSerial(benchmark::State& st) {
    Eigen::MatrixXd g = bench_gram(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(fincke_pohst_serial(g, 30.0));
}

void BM_Rho(benchmark::State& st) {
    QuadField K(-2);
    for (auto _ : st) benchmark::DoNotOptimize(rho(K, st.range(0)));
}

void BM_RhoSerial(benchmark::State& st) {
    QuadField K(-2);
    for (auto _ : st) benchmark::DoNotOptimize(rho_serial(K, st.range(0)));
}

void BM_KernelDirect(benchmark::State& st) {
    NSParams p{st.range(0), 2, 1};
    for (auto _ : st) benchmark::DoNotOptimize(ns_kernel_direct({0.1, 0.8}, {-0.2, 0.9}, p, 1e-12));
}

void BM_KernelDirectSerial(benchmark::State& st) {
    NSParams p{st.range(0), 2, 1};
    for (auto _ : st) benchmark::DoNotOptimize(ns_kernel_direct_serial({0.1, 0.8}, {-0.2, 0.9}, p, 1e-12));
}

}  // namespace

BENCHMARK(BM_FinckePohst)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FinckePohstSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rho)->Arg(9240)->Arg(720720)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RhoSerial)->Arg(9240)->Arg(720720)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelDirect)->Arg(1)->Arg(35)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelDirectSerial)->Arg(1)->Arg(35)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
