#include <benchmark/benchmark.h>

#include "arithdisc/kummer.hpp"
#include "arithdisc/matfact.hpp"
#include "arithdisc/rng.hpp"

using namespace arithdisc;

namespace {

BranchLayout gaussian_layout() {
  auto Qi = NumberField::builtin("gaussian");
  return BranchLayout::create(
      Qi,
      {IntegerElement{{Integer(1), Integer(1)}},
       IntegerElement{{Integer(2), Integer(1)}}, Qi->from_integer(3)},
      0);
}

void BM_hensel_root(benchmark::State& state) {
  const unsigned k = static_cast<unsigned>(state.range(0));
  const unsigned N = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hensel_root(k, N));
  }
}
BENCHMARK(BM_hensel_root)->Args({2, 64})->Args({12, 128});

void BM_weierstrass_divide(benchmark::State& state) {
  auto Q = NumberField::builtin("rational");
  RingPtr ring = make_ring(Q, Q->from_integer(2), TailMode::FormalTail);
  const unsigned N = static_cast<unsigned>(state.range(0));
  Rng rng(1);
  auto rand_series = [&](unsigned order) {
    std::vector<LocalizedElement> cs(order);
    for (unsigned t = 0; t < order; ++t)
      cs[t] = LocalizedElement{Q->from_integer(rng.range(-100, 100)),
                               static_cast<unsigned>(rng.below(5))};
    return series_from_coeffs(ring, order, std::move(cs));
  };
  TruncatedSeries f = rand_series(N);
  TruncatedSeries g = rand_series(N);
  if (!t_valuation(g)) g = series_one(ring, N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weierstrass_divide(f, g, WDivMode::BoundRemainder));
  }
}
BENCHMARK(BM_weierstrass_divide)->Arg(32)->Arg(64);

void BM_split_series(benchmark::State& state) {
  auto Q = NumberField::builtin("rational");
  BranchLayout lay = BranchLayout::create(
      Q, {Q->from_integer(2), Q->from_integer(3), Q->from_integer(5)}, 0);
  const unsigned N = static_cast<unsigned>(state.range(0));
  Rng rng(2);
  auto ringI = lay.ring_full();
  std::vector<LocalizedElement> cs(N);
  for (unsigned t = 0; t < N; ++t)
    cs[t] = LocalizedElement{Q->from_integer(rng.range(-50, 50)),
                             static_cast<unsigned>(rng.below(3))};
  TruncatedSeries f = series_from_coeffs(ringI, N, std::move(cs));
  for (auto _ : state) {
    benchmark::DoNotOptimize(split_series(f, 1, lay));
  }
}
BENCHMARK(BM_split_series)->Arg(32);

void BM_near_identity_factor(benchmark::State& state) {
  BranchLayout lay = gaussian_layout();
  const unsigned N = static_cast<unsigned>(state.range(0));
  Rng rng(3);
  SeriesMatrix b = random_near_identity(rng, lay, 2, N, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(near_identity_factor(b, 1, lay));
  }
}
BENCHMARK(BM_near_identity_factor)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
