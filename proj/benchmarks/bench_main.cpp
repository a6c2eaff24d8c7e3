#include <benchmark/benchmark.h>

#include <random>

#include "avfq/isogeny_class.hpp"
#include "avfq/matrix.hpp"
#include "avfq/order.hpp"
#include "avfq/rational_points.hpp"

using namespace avfq;

namespace {

IntPoly poly(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}

// Surfaces and a threefold with nontrivial conductors.
const IsogenyClass& surface_q5() {
  static const IsogenyClass c = IsogenyClass::make(validate_weil(poly({25, 0, 6, 0, 1}), Int(5)));
  return c;
}
const IsogenyClass& threefold_q3() {
  static const IsogenyClass c = IsogenyClass::make(validate_weil(poly({27, 0, 0, 1, 0, 0, 1}), Int(3)));
  return c;
}

void BM_HermiteNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-50, 50);
  std::vector<std::vector<Int>> rows(2 * n, std::vector<Int>(n));
  for (auto& r : rows)
    for (auto& x : r) x = d(rng);
  const IntMat m = IntMat::from_rows(rows);
  for (auto _ : state) benchmark::DoNotOptimize(hnf_basis(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(4)->Arg(8)->Arg(12);

void BM_ValidateWeil(benchmark::State& state) {
  const IntPoly h = poly({27, 0, 0, 1, 0, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(validate_weil(h, Int(3)));
}
BENCHMARK(BM_ValidateWeil);

void BM_MakeClass(benchmark::State& state) {
  const WeilPoly w = validate_weil(poly({27, 0, 0, 1, 0, 0, 1}), Int(3));
  for (auto _ : state) benchmark::DoNotOptimize(IsogenyClass::make(w));
}
BENCHMARK(BM_MakeClass)->Unit(benchmark::kMillisecond);

void BM_Overorders(benchmark::State& state) {
  const IsogenyClass& c = surface_q5();
  for (auto _ : state) benchmark::DoNotOptimize(overorders(c.frobenius_order(), c.maximal_order()));
}
BENCHMARK(BM_Overorders)->Unit(benchmark::kMillisecond);

void BM_GroupFromOrder(benchmark::State& state) {
  const IsogenyClass& c = threefold_q3();
  for (auto _ : state) benchmark::DoNotOptimize(group_from_order(c, c.frobenius_order()));
}
BENCHMARK(BM_GroupFromOrder)->Unit(benchmark::kMillisecond);

void BM_SearchGroups(benchmark::State& state) {
  const IsogenyClass& c = surface_q5();
  const Order& s = c.frobenius_order();
  const Int depth = default_search_depth(c, s);
  for (auto _ : state) benchmark::DoNotOptimize(search_groups_for_multiplicator(c, s, depth));
}
BENCHMARK(BM_SearchGroups)->Unit(benchmark::kMillisecond);

void BM_ClassifyElliptic(benchmark::State& state) {
  const auto classes = enumerate_elliptic_classes(Int(state.range(0)));
  for (auto _ : state)
    for (const auto& w : classes) {
      benchmark::DoNotOptimize(is_cyclic_class(w, CyclicMethod::Newton));
      benchmark::DoNotOptimize(is_rich_class(w, RichMethod::Formula));
    }
}
BENCHMARK(BM_ClassifyElliptic)->Arg(25)->Arg(101)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
