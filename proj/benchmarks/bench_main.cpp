#include <benchmark/benchmark.h>

#include "lipmod/bilipmap.hpp"
#include "lipmod/family.hpp"
#include "lipmod/metricinf.hpp"
#include "lipmod/newton.hpp"
#include "lipmod/parse.hpp"

using namespace lipmod;

namespace {

Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

void BM_ParsePoly(benchmark::State& st) {
  const Bindings b{{"s", q(7, 2)}, {"c", q(3, 7)}};
  for (auto _ : st) benchmark::DoNotOptimize(parse_poly("(x*(x^2*y^2 - s*x*y - 1) - c)^3", b));
}
BENCHMARK(BM_ParsePoly);

void BM_MilnorAtInfinity(benchmark::State& st) {
  const BiPoly g = parse_poly("x^3 - s*x^2*z^2 - x*z^4 - c*z^5", {{"s", q(1)}, {"c", q(0)}}, {"x", "z"});
  for (auto _ : st) benchmark::DoNotOptimize(milnor_newton(g));
}
BENCHMARK(BM_MilnorAtInfinity);

void BM_Classify(benchmark::State& st) {
  const BiPoly f = family_poly({FamilyKind::Cubic, Scalar(q(7, 2))});
  for (auto _ : st) benchmark::DoNotOptimize(classify(f));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_InvariantExact(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(invariant_ratio_forms(Scalar(q(13, 7))));
}
BENCHMARK(BM_InvariantExact);

void BM_MonotonicityGrid(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(monotonicity_check(q(-10), q(10), q(1, 100)));
}
BENCHMARK(BM_MonotonicityGrid)->Unit(benchmark::kMillisecond);

void BM_SpecialDistortion(benchmark::State& st) {
  const PiecewiseBilip map = build_special_map();
  const auto pts = sample_special_level(1, static_cast<std::size_t>(st.range(0)));
  DistortionOptions opts;
  opts.random_pairs = 100000;
  for (auto _ : st) benchmark::DoNotOptimize(distortion(map, pts, opts));
}
BENCHMARK(BM_SpecialDistortion)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_GenericMapBuild(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_generic_map(static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_GenericMapBuild)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_SheetsAt(benchmark::State& st) {
  Complex y(3.0, 1.0);
  for (auto _ : st) {
    benchmark::DoNotOptimize(sheets_at(1.0, Complex(1e-3, 2e-4), y));
    y += Complex(1e-6, 0);
  }
}
BENCHMARK(BM_SheetsAt);

void BM_WitnessRatio(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(inner_outer_ratio(1.0, 1e-4, 0.5));
}
BENCHMARK(BM_WitnessRatio)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
