// Serial reference against the OpenMP variant for the batch kernels.

#include "homog/builtins.hpp"
#include "homog/cartan.hpp"
#include "homog/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace homog;

namespace {

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

kernels::Exec exec_of(const benchmark::State& st) { return st.range(0) ? kernels::Exec::parallel : kernels::Exec::serial; }

void BM_InvariantCurveBatch(benchmark::State& st)
{
    const auto s = builtin_shear("bernoulli", 21);
    const RealShear rs = real_shear(s);
    std::vector<double> xs;
    for (double x : linspace(-0.2, 0.2, 64))
        if (std::abs(x) > 1e-9) xs.push_back(x);
    NumericCurveOptions o;
    o.tol = 1e-10;
    for (auto _ : st) benchmark::DoNotOptimize(kernels::invariant_curve_batch(rs, xs, o, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(xs.size()));
}

void BM_Sample(benchmark::State& st)
{
    const auto w = weak_regularity_example(Rational(1, 2), Rational(1, 5));
    const auto xs = linspace(-1, 1, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::sample(w.sampler, xs, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * st.range(1));
}

void BM_GeneratorGrid(benchmark::State& st)
{
    const auto fam = builtin_family("affine_exp");
    const auto ts = halving_scales();
    std::vector<Point2> grid;
    for (double x : linspace(-1, 1, 32))
        for (double y : linspace(-1, 1, 32)) grid.push_back({x, y});
    for (auto _ : st) benchmark::DoNotOptimize(infinitesimal_generator(fam, ts, grid, st.range(0) != 0));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
}

void BM_InvarianceResiduals(benchmark::State& st)
{
    const GraphCurve c{"e^x", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, {}};
    const auto fam = builtin_family("affine_exp");
    const PointMap psi = fam.at(0.3);
    const auto xs = linspace(-1, 1, 1 << 14);
    for (auto _ : st) benchmark::DoNotOptimize(invariance_residuals(c, psi, xs, st.range(0) != 0));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(xs.size()));
}

} // namespace

BENCHMARK(BM_InvariantCurveBatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sample)->ArgNames({"parallel", "n"})->Args({0, 1 << 12})->Args({1, 1 << 12});
BENCHMARK(BM_GeneratorGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InvarianceResiduals)->ArgName("parallel")->Arg(0)->Arg(1);

BENCHMARK_MAIN();
