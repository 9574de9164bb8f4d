#include <benchmark/benchmark.h>

#include "hbern/bernstein.hpp"
#include "hbern/frame.hpp"
#include "hbern/instability.hpp"
#include "hbern/surface.hpp"
#include "hbern/variation.hpp"

using namespace hbern;

namespace {

const BuiltinFn& tan_tanh() {
    static const BuiltinFn b = builtin_tan_tanh();
    return b;
}

void BM_expr_jet(benchmark::State& state) {
    const ScalarFn f = parse("tan(tanh(t))", {"t"});
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.jet(t));
        t += 1e-6;
    }
}
BENCHMARK(BM_expr_jet);

void BM_frame_derivs(benchmark::State& state) {
    const GraphicalStrip s = strip_new(tan_tanh().fn, tan_tanh().domain);
    const DefiningFn phi = strip_defining(s);
    double y = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame_derivs(phi, {y * tan_tanh().fn(0.3), y, 0.3}));
        y += 1e-6;
    }
}
BENCHMARK(BM_frame_derivs);

void BM_strip_perimeter(benchmark::State& state) {
    const GraphicalStrip s = strip_new(tan_tanh().fn, tan_tanh().domain);
    const ParamPatch p = strip_patch(s, {-2, 2}, {-1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(h_perimeter(p));
}
BENCHMARK(BM_strip_perimeter);

void BM_second_variation_numeric(benchmark::State& state) {
    const GraphicalStrip s = strip_new(tan_tanh().fn, tan_tanh().domain);
    const ParamPatch p = strip_patch(s, {-3, 3}, {-2, 2});
    const Rect sup{-2, 2, -1.4, 1.4};
    const Deformation X = x1_deformation(bump_field(sup, 0.8), sup);
    for (auto _ : state) benchmark::DoNotOptimize(second_variation_numeric(p, X));
}
BENCHMARK(BM_second_variation_numeric);

void BM_reverse_sides(benchmark::State& state) {
    const BumpFamily bump = make_bump_family(0.25);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            reverse_inequality_sides(tan_tanh().fn, bump, k, {1e-8, 1e-14, 30}));
}
BENCHMARK(BM_reverse_sides)->Arg(8)->Arg(128);

void BM_seed_trace(benchmark::State& state) {
    const ScalarFn f = parse("x*y/2 + sin(x)", {"x", "y"});
    GraphFn2 fj = [&f](double x, double y) { return f.jet(x, y); };
    for (auto _ : state) benchmark::DoNotOptimize(seed_trace(fj, {0.4, 1.2}, 1.0, {}));
}
BENCHMARK(BM_seed_trace);

}  // namespace

BENCHMARK_MAIN();
