#include <benchmark/benchmark.h>

#include "nilorb/finorbits.hpp"
#include "nilorb/instability.hpp"

using namespace nilorb;

namespace {

LieAlgebraPtr alg(const std::string& t, std::uint32_t p) { return LieAlgebra::build(RootDatum::build(t), CoeffField(p)); }

// Regular orbit of C3 over Q with a ball of radius 9 |phi|^2.
struct SearchCase {
  LieAlgebraPtr L = alg("C3", 0);
  OrbitDescriptor o = enumerate_orbits(L).back();
  NormForm norm = default_norm(L->datum());
  mpq_class bound = 9 * norm.norm2(o.associated_cochar.coords).to_mpq();
};

const SearchCase& search_case() {
  static const SearchCase c;
  return c;
}

void BM_OptimalSearch(benchmark::State& state) {
  const auto& c = search_case();
  SearchOptions so;
  so.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_search(c.o.representative, c.norm, c.bound, so));
}

void BM_OptimalSearchSerial(benchmark::State& state) {
  const auto& c = search_case();
  for (auto _ : state) benchmark::DoNotOptimize(optimal_search_serial(c.o.representative, c.norm, c.bound));
}

// Minimal orbit of sp4 over F7: the U-orbit scan runs over 7^3 elements per orbit.
const OrbitDescriptor& uorbit_case() {
  static const OrbitDescriptor o = enumerate_orbits(alg("C2", 7))[2];
  return o;
}

void BM_UOrbit(benchmark::State& state) {
  FinOptions fo;
  fo.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(u_orbit_check(uorbit_case().representative, uorbit_case().associated_cochar, fo));
}

void BM_UOrbitSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(u_orbit_check_serial(uorbit_case().representative, uorbit_case().associated_cochar));
}

void BM_NilpotentCone(benchmark::State& state) {
  auto L = alg("A2", 3);
  for (auto _ : state) benchmark::DoNotOptimize(nilpotent_cone_size(L, static_cast<int>(state.range(0))));
}

void BM_NilpotentConeSerial(benchmark::State& state) {
  auto L = alg("A2", 3);
  for (auto _ : state) benchmark::DoNotOptimize(nilpotent_cone_size_serial(L));
}

}  // namespace

BENCHMARK(BM_OptimalSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimalSearch)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UOrbitSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UOrbit)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NilpotentConeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NilpotentCone)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
