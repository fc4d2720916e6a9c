#include <benchmark/benchmark.h>

#include "kfold/classify.hpp"
#include "kfold/features.hpp"
#include "kfold/surface.hpp"

using namespace kfold;

namespace {

RatPoly saddle() {
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(0, 2, Rational(-1, 2));
  f.add_term(0, 4, Rational(1));
  f.add_term(3, 0, Rational(1, 3));
  return f;
}

}  // namespace

static void BM_MilnorNumberAk(benchmark::State& state) {
  RatPoly g;
  g.add_term(2, 0, Rational(1));
  g.add_term(0, static_cast<int>(state.range(0)) + 1, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(milnor_number(g));
}
BENCHMARK(BM_MilnorNumberAk)->Arg(4)->Arg(16)->Arg(48);

static void BM_InvariantSetM1(benchmark::State& state) {
  RatPoly f;
  f.add_term(1, 1, Rational(1));
  f.add_term(0, 2, Rational(1));
  const JetGerm g(static_cast<int>(state.range(0)), f);
  for (auto _ : state) benchmark::DoNotOptimize(invariant_set(g));
}
BENCHMARK(BM_InvariantSetM1)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

static void BM_ClassifyNormalForms(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto cases = normal_form_cases(k);
  for (auto _ : state)
    for (const auto& c : cases) benchmark::DoNotOptimize(classify(JetGerm(k, c.f)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cases.size()));
}
BENCHMARK(BM_ClassifyNormalForms)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_MongeAtPoint(benchmark::State& state) {
  SurfacePatch s;
  s.f = saddle();
  for (auto _ : state) benchmark::DoNotOptimize(monge_at_point(s, 0.13, -0.21));
}
BENCHMARK(BM_MongeAtPoint);

static void BM_TraceParabolic(benchmark::State& state) {
  SurfacePatch s;
  s.f = saddle();
  s.x0 = s.y0 = -0.5;
  s.x1 = s.y1 = 0.5;
  s.nx = s.ny = static_cast<int>(state.range(0));
  TraceOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(trace_features(s, {Feature::Parabolic}, opts));
}
BENCHMARK(BM_TraceParabolic)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
