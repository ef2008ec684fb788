#include "rsp/kernels.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <vector>

using namespace rsp;

namespace {

std::vector<float> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> d;
    std::vector<float> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// LeNet-style second conv layer on MNIST-sized feature maps.
ConvGeometry conv_case(benchmark::State& state) {
    return conv_geometry({static_cast<std::size_t>(state.range(0)), 8, 14, 14}, {16, 8, 5, 5}, 1, 2);
}

void threads_from(benchmark::State& state) {
    omp_set_num_threads(state.range(1) > 0 ? static_cast<int>(state.range(1)) : omp_get_num_procs());
}

void BM_ConvForwardReference(benchmark::State& state) {
    const auto g = conv_case(state);
    const auto x = random_vector(g.batch * g.in_size(), 1), w = random_vector(g.out_channels * g.patch(), 2),
               b = random_vector(g.out_channels, 3);
    std::vector<float> y(g.batch * g.out_size());
    for (auto _ : state) {
        reference::conv2d_forward(g, x, w, b, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.batch));
}

void BM_ConvForwardParallel(benchmark::State& state) {
    threads_from(state);
    const auto g = conv_case(state);
    const auto x = random_vector(g.batch * g.in_size(), 1), w = random_vector(g.out_channels * g.patch(), 2),
               b = random_vector(g.out_channels, 3);
    std::vector<float> y(g.batch * g.out_size());
    for (auto _ : state) {
        kernels::conv2d_forward(g, x, w, b, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.batch));
}

void BM_ConvBackwardReference(benchmark::State& state) {
    const auto g = conv_case(state);
    const auto x = random_vector(g.batch * g.in_size(), 1), w = random_vector(g.out_channels * g.patch(), 2),
               gy = random_vector(g.batch * g.out_size(), 3);
    std::vector<float> gw(w.size()), gb(g.out_channels), gx(x.size());
    for (auto _ : state) {
        reference::conv2d_backward(g, x, w, gy, gw, gb, gx);
        benchmark::DoNotOptimize(gx.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.batch));
}

void BM_ConvBackwardParallel(benchmark::State& state) {
    threads_from(state);
    const auto g = conv_case(state);
    const auto x = random_vector(g.batch * g.in_size(), 1), w = random_vector(g.out_channels * g.patch(), 2),
               gy = random_vector(g.batch * g.out_size(), 3);
    std::vector<float> cols(g.batch * g.patch() * g.out_area()), y(g.batch * g.out_size());
    kernels::conv2d_forward(g, x, w, {}, y, cols);
    std::vector<float> gw(w.size()), gb(g.out_channels), gx(x.size());
    for (auto _ : state) {
        kernels::conv2d_backward(g, cols, w, gy, gw, gb, gx);
        benchmark::DoNotOptimize(gx.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.batch));
}

void BM_LinearForwardReference(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0)), in = 784, out = 64;
    const auto x = random_vector(n * in, 1), w = random_vector(in * out, 2), b = random_vector(out, 3);
    std::vector<float> y(n * out);
    for (auto _ : state) {
        reference::linear_forward(n, in, out, x, w, b, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_LinearForwardParallel(benchmark::State& state) {
    threads_from(state);
    const std::size_t n = static_cast<std::size_t>(state.range(0)), in = 784, out = 64;
    const auto x = random_vector(n * in, 1), w = random_vector(in * out, 2), b = random_vector(out, 3);
    std::vector<float> y(n * out);
    for (auto _ : state) {
        kernels::linear_forward(n, in, out, x, w, b, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

// Second argument: OpenMP threads (0 = all processors). The reference kernels are serial.
void serial_args(benchmark::internal::Benchmark* b) {
    for (long n : {16, 64}) b->Args({n, 1});
}

void parallel_args(benchmark::internal::Benchmark* b) {
    for (long n : {16, 64}) {
        b->Args({n, 1});
        b->Args({n, 0});
    }
}

}  // namespace

BENCHMARK(BM_ConvForwardReference)->Apply(serial_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvForwardParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ConvBackwardReference)->Apply(serial_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackwardParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LinearForwardReference)->Apply(serial_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LinearForwardParallel)->Apply(parallel_args)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
