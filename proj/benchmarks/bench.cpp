#include <benchmark/benchmark.h>

#include "qsc/homology.hpp"
#include "qsc/protocols.hpp"

using namespace qsc;

static void BM_h1_torus(benchmark::State& state) {
  auto f3 = make_field(3);
  TwoComplex g = build_torus_square(static_cast<int>(state.range(0)), f3);
  for (auto _ : state) {
    HomologySummary s = h1(g);
    benchmark::DoNotOptimize(s.rank_h1);
  }
}
BENCHMARK(BM_h1_torus)->Arg(4)->Arg(8)->Arg(16);

static void BM_pauli_apply(benchmark::State& state) {
  auto f3 = make_field(3);
  auto g = std::make_shared<TwoComplex>(build_torus_square(2, f3));
  StabilizerCode code(g);
  DenseState s = DenseState::zero_state(f3, 8);
  apply_code_projector(code, s);
  s.normalize();
  const PauliOp& op = code.generators().front();
  for (auto _ : state) {
    s.apply_pauli(op);
    benchmark::DoNotOptimize(s.amp(0));
  }
}
BENCHMARK(BM_pauli_apply);

static void BM_code_projector(benchmark::State& state) {
  auto f = make_field(static_cast<int>(state.range(0)));
  auto g = std::make_shared<TwoComplex>(build_torus_square(2, f));
  StabilizerCode code(g);
  for (auto _ : state) {
    DenseState s = DenseState::zero_state(f, 8);
    apply_code_projector(code, s);
    benchmark::DoNotOptimize(s.amp(0));
  }
}
BENCHMARK(BM_code_projector)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_store_protocol(benchmark::State& state) {
  auto f3 = make_field(3);
  auto g = std::make_shared<TwoComplex>(build_torus_square(2, f3));
  auto code = std::make_shared<StabilizerCode>(g);
  Chain omega = cycle_representative(*g, {1, 0});
  std::vector<cxd> alpha = {cxd{0.6, 0.0}, cxd{0.0, 0.8}, cxd{0.0, 0.0}};
  for (auto _ : state) {
    StoreResult r = store_cycle_superposition(*code, alpha, omega, Rng(1));
    benchmark::DoNotOptimize(r.fidelity_vs_projector);
  }
}
BENCHMARK(BM_store_protocol)->Unit(benchmark::kMillisecond);

static void BM_winding_phase(benchmark::State& state) {
  auto f3 = make_field(3);
  for (auto _ : state) {
    BraidResult r = braid_winding(f3, f3->one(), f3->from_int(2), f3->from_int(2), f3->one());
    benchmark::DoNotOptimize(r.dense_exponent);
  }
}
BENCHMARK(BM_winding_phase)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
