#include <benchmark/benchmark.h>

#include "driftlab/dynamics/initial_data.hpp"
#include "driftlab/dynamics/stepper.hpp"
#include "driftlab/profiles/expansion.hpp"
#include "driftlab/profiles/oracle.hpp"
#include "driftlab/spectral/fft.hpp"

using namespace driftlab;

namespace {

Field initial(std::size_t n) {
  return build_initial_field(make_grid(n, 0.375 * static_cast<double>(n)), InitialDataSpec::default_pair());
}

void BM_ForwardInverse(benchmark::State& state) {
  const Field u = initial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(forward(u)));
}
BENCHMARK(BM_ForwardInverse)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Rhs(benchmark::State& state) {
  const Field u = initial(static_cast<std::size_t>(state.range(0)));
  const ModelSpec model{static_cast<ModelKind>(state.range(1)), {0.0, 0.0}};
  const FluxEvaluator ev(u.grid(), model.kind == ModelKind::cd ? ModelSpec{ModelKind::cd, {1.0, 0.0}} : model);
  const Spectrum s = forward(u);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(s));
}
BENCHMARK(BM_Rhs)
    ->ArgsProduct({{256, 512}, {static_cast<long>(ModelKind::qg), static_cast<long>(ModelKind::cd),
                                static_cast<long>(ModelKind::fr)}})
    ->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const Field u = initial(static_cast<std::size_t>(state.range(0)));
  const Stepper st(u.grid(), {ModelKind::qg, {0.0, 0.0}});
  Spectrum s = forward(u);
  for (auto _ : state) benchmark::DoNotOptimize(st.step(s, 0.01));
}
BENCHMARK(BM_Step)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_StackSample(benchmark::State& state) {
  const Grid g = make_grid(static_cast<std::size_t>(state.range(0)), 192.0);
  const ModelSpec cd{ModelKind::cd, {1.0, 0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(expansion_stack(cd, 50.0, g, 1.0, {0.8, 0.0}, StackFlags::full(ModelKind::cd)));
  }
}
BENCHMARK(BM_StackSample)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const Grid g = make_grid(64, 24.0);
  const ModelSpec m{static_cast<ModelKind>(state.range(0)), {1.0, 0.0}};
  const ModelSpec model = m.kind == ModelKind::cd ? m : ModelSpec{m.kind, {0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(duhamel_oracle(model, 1.0, g, 1.0));
}
BENCHMARK(BM_Oracle)->Arg(static_cast<long>(ModelKind::cd))->Arg(static_cast<long>(ModelKind::fr))->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
