// Serial reference kernels against their OpenMP versions on the case-study
// grid. Thread count follows OMP_NUM_THREADS / CORRIDOR_OPT_THREADS.

#include <benchmark/benchmark.h>

#include "corridor/kernels.hpp"
#include "corridor/objectives.hpp"
#include "corridor/parallel.hpp"
#include "corridor/scenario.hpp"

namespace {

using namespace corridor;

struct Fixture {
  Scenario scenario = default_scenario();
  SampleSet samples = scenario.build_samples();
  LinkTable table{samples, scenario.deployment};
  std::vector<double> tilts = std::vector<double>(scenario.deployment.size(), -5.0);
  std::vector<double> powers = std::vector<double>(scenario.deployment.size(), 30.0);
  std::vector<int> cells = std::vector<int>(samples.size());

  Fixture() {
    configure_threads_from_env();
    kernels::assign_serial(table, {tilts, powers}, cells);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

ObjectiveSpec spec_for(int kind) {
  ObjectiveSpec s;
  s.kind = static_cast<ObjectiveKind>(kind);
  return s;
}

constexpr unsigned kAll = kernels::kGradTheta | kernels::kGradRho;

void BM_EvaluateSerial(benchmark::State& st) {
  const Fixture& f = fixture();
  const ObjectiveSpec spec = spec_for(static_cast<int>(st.range(0)));
  const unsigned need = spec.kind == ObjectiveKind::kRss ? kernels::kGradTheta : kAll;
  for (auto _ : st) {
    auto e = kernels::evaluate_serial(f.table, spec, f.cells, {f.tilts, f.powers}, need);
    benchmark::DoNotOptimize(e.value);
  }
  st.counters["points"] = static_cast<double>(f.samples.size());
}

void BM_EvaluateParallel(benchmark::State& st) {
  const Fixture& f = fixture();
  const ObjectiveSpec spec = spec_for(static_cast<int>(st.range(0)));
  const unsigned need = spec.kind == ObjectiveKind::kRss ? kernels::kGradTheta : kAll;
  kernels::Workspace ws;
  for (auto _ : st) {
    auto e = kernels::evaluate_parallel(f.table, spec, f.cells, {f.tilts, f.powers}, need, ws);
    benchmark::DoNotOptimize(e.value);
  }
  st.counters["threads"] = max_threads();
}

void BM_AssignSerial(benchmark::State& st) {
  const Fixture& f = fixture();
  std::vector<int> out(f.samples.size());
  for (auto _ : st) {
    kernels::assign_serial(f.table, {f.tilts, f.powers}, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_AssignParallel(benchmark::State& st) {
  const Fixture& f = fixture();
  std::vector<int> out(f.samples.size());
  for (auto _ : st) {
    kernels::assign_parallel(f.table, {f.tilts, f.powers}, out);
    benchmark::DoNotOptimize(out.data());
  }
}

// Argument: objective kind (0 RSS, 1 SINR, 2 MP, 3 SM).
BENCHMARK(BM_EvaluateSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssignSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AssignParallel)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
