#include <benchmark/benchmark.h>

#include "biphoton/gvm_design.hpp"
#include "biphoton/material_database.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/units.hpp"

using namespace biphoton;

namespace {

const MaterialDatabase& database() {
  static const MaterialDatabase db = MaterialDatabase::builtin();
  return db;
}

struct KdpSetup {
  PumpConfig pump;
  CrystalConfig crystal;
};

KdpSetup kdp() {
  const auto& m = database().get(Material::KDP);
  KdpSetup s;
  s.pump = make_pump(415.0, 5.0);
  s.crystal = make_crystal_auto(m, m.default_scheme, 0.83, mm_to_um(20.0));
  return s;
}

}  // namespace

static void BM_GroupIndex(benchmark::State& state) {
  const auto& m = database().get(Material::BBO);
  const RaySpec ray{Polarization::Extraordinary, degrees_to_radians(41.0)};
  const double omega = omega_from_wavelength(1.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_group_velocity(m, ray, omega));
  }
}
BENCHMARK(BM_GroupIndex);

static void BM_GvmSearch(benchmark::State& state) {
  const auto& m = database().get(Material::KTP);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gvm_wavelength_search(m, m.default_scheme));
  }
}
BENCHMARK(BM_GvmSearch)->Unit(benchmark::kMillisecond);

static void BM_JsaGrid(benchmark::State& state) {
  const auto s = kdp();
  const auto grid = default_grid(s.pump, s.crystal, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto f = jsa_grid(s.pump, s.crystal, grid, JsaModel::FullSinc);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_JsaGrid)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_JointTemporalIntensity(benchmark::State& state) {
  const auto s = kdp();
  const auto grid = default_grid(s.pump, s.crystal, static_cast<int>(state.range(0)));
  const auto f = jsa_grid(s.pump, s.crystal, grid, JsaModel::FullSinc);
  for (auto _ : state) {
    auto t = joint_temporal_intensity(f);
    benchmark::DoNotOptimize(t.values.data());
  }
}
BENCHMARK(BM_JointTemporalIntensity)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_Schmidt(benchmark::State& state) {
  const auto s = kdp();
  const auto grid = default_grid(s.pump, s.crystal, static_cast<int>(state.range(0)));
  const auto f = jsa_grid(s.pump, s.crystal, grid, JsaModel::FullSinc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooperativity(schmidt_decompose(f)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Schmidt)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond)->Complexity();

BENCHMARK_MAIN();
