#include <benchmark/benchmark.h>

#include <memory>

#include "wulff/profile.hpp"
#include "wulff/radial_solver.hpp"
#include "wulff/rearrangement.hpp"
#include "wulff/recovery.hpp"

using namespace wulff;

namespace {

std::shared_ptr<const OptimalProfile> shared_profile() {
  static const auto p = std::make_shared<const OptimalProfile>(build_profile(DoubleWell(1.5, 0.5), 2048));
  return p;
}

void BM_BuildProfile(benchmark::State& state) {
  const DoubleWell w(1.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_profile(w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BuildProfile)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_RadialSolve(benchmark::State& state) {
  const double eps = 0.1 / static_cast<double>(state.range(0));
  const auto pb = make_radial_problem(shared_profile(), AnisotropicNorm::euclidean(2), 1.0, 0.5, eps);
  for (auto _ : state) benchmark::DoNotOptimize(minimize(pb));
  state.counters["nodes"] = static_cast<double>(pb.size());
}
BENCHMARK(BM_RadialSolve)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CorrectedEnergy(benchmark::State& state) {
  RecoveryConfig cfg;
  cfg.norm = std::make_shared<const AnisotropicNorm>(AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0}));
  cfg.profile = shared_profile();
  for (auto _ : state) benchmark::DoNotOptimize(corrected_energy(cfg, 0.025));
}
BENCHMARK(BM_CorrectedEnergy)->Unit(benchmark::kMillisecond);

void BM_PolyaSzego(benchmark::State& state) {
  const auto norm = AnisotropicNorm::euclidean(2);
  const auto field = make_random_field(norm, 1.0, static_cast<std::size_t>(state.range(0)), 1);
  const DoubleWell w(1.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(check_polya_szego(field, norm, w));
}
BENCHMARK(BM_PolyaSzego)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
