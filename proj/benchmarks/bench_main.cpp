#include <benchmark/benchmark.h>

#include <complex>

#include "cyclab/ball.hpp"
#include "cyclab/poincare.hpp"
#include "cyclab/polar.hpp"
#include "cyclab/rng.hpp"
#include "cyclab/stats.hpp"
#include "cyclab/zero_count.hpp"

using namespace cyclab;

namespace {

PolyField bench_field(int degree) {
    SampleRng rng(42, static_cast<std::uint64_t>(degree));
    return sample_field(degree, 2.0 * regime_norm(degree), rng);
}

void BM_EvalPolar(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const PolyField f = bench_field(d);
    const PolarEvaluator H(f);
    Complex z{0.4, 0.1};
    double phi = 0.0;
    for (auto _ : state) {
        phi += 0.37;
        benchmark::DoNotOptimize(H(z, phi));
    }
}
BENCHMARK(BM_EvalPolar)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_PoincareMap(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const PolyField f = bench_field(d);
    const PolarEvaluator H(f);
    IntegratorOptions opt;
    opt.keep_dense = false;
    for (auto _ : state) benchmark::DoNotOptimize(poincare_map(H, Complex{0.4, 0.0}, opt));
}
BENCHMARK(BM_PoincareMap)->Arg(2)->Arg(3)->Arg(5);

void BM_SampleBall(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    SampleRng rng(7, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_ball(dim, 1.0, rng));
}
BENCHMARK(BM_SampleBall)->Arg(10)->Arg(40)->Arg(160);

void BM_WindingPolynomial(benchmark::State& state) {
    // Degree-10 polynomial with roots spread over the disk; no ODE involved.
    SampleRng rng(11, 0);
    std::vector<Complex> roots;
    for (int j = 0; j < 10; ++j)
        roots.push_back(std::sqrt(rng.uniform01()) * std::polar(1.0, rng.uniform(0.0, 6.283185)));
    auto f = [&roots](Complex z) {
        Complex v{1.0};
        for (const auto& r : roots) v *= (z - r);
        return v;
    };
    for (auto _ : state) benchmark::DoNotOptimize(count_complex_zeros(f, 2.0 / 3.0));
}
BENCHMARK(BM_WindingPolynomial);

void BM_CountSample(benchmark::State& state) {
    const PolyField f = bench_field(2);
    CycleCountOptions opt;
    opt.real_scan.norm_cap = regime_norm(2);
    for (auto _ : state) benchmark::DoNotOptimize(count_cycles_of_sample(f, opt));
}
BENCHMARK(BM_CountSample)->Unit(benchmark::kMillisecond);

void BM_ClopperPearson(benchmark::State& state) {
    long k = 0;
    for (auto _ : state) {
        k = (k + 17) % 1000;
        benchmark::DoNotOptimize(clopper_pearson(k, 1000));
    }
}
BENCHMARK(BM_ClopperPearson);

}  // namespace

BENCHMARK_MAIN();
