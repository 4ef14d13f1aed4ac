#include <benchmark/benchmark.h>

#include <complex>
#include <memory>
#include <vector>

#include "qdilog/faddeev.hpp"
#include "qdilog/torus.hpp"

namespace {

using qdilog::ExchangeMatrix;
using qdilog::RationalFunctionField;
using Ctx = qdilog::TorusContext<RationalFunctionField>;
using Elem = qdilog::TorusElement<RationalFunctionField>;

// Ψ(Y1) and Ψ(Y2) in the A2 torus: dense enough to exercise the full plan.
std::pair<Elem, Elem> operands(int order) {
  auto ctx = std::make_shared<const Ctx>(ExchangeMatrix({{0, -1}, {1, 0}}), order);
  const std::vector<int> e1{1, 0}, e2{0, 1};
  return {qdilog::psi_series(Elem::monomial(ctx, e1)) + qdilog::psi_series(Elem::monomial(ctx, e2)),
          qdilog::psi_series(Elem::monomial(ctx, e2)) * qdilog::psi_series(Elem::monomial(ctx, e1))};
}

void BM_TorusMultiplyParallel(benchmark::State& state) {
  const auto [a, b] = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qdilog::multiply(a, b));
}

void BM_TorusMultiplyReference(benchmark::State& state) {
  const auto [a, b] = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qdilog::multiply_reference(a, b));
}

BENCHMARK(BM_TorusMultiplyParallel)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TorusMultiplyReference)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();

void phib_grid(benchmark::State& state, bool parallel) {
  const std::vector<double> zs{-0.4, -0.2, 0.0, 0.2, 0.4};
  const std::vector<std::complex<double>> bs{0.7, 1.0, 1.3, std::polar(1.0, 0.4487989505128276),
                                             std::polar(1.0, 0.6283185307179586)};
  for (auto _ : state) benchmark::DoNotOptimize(qdilog::check_phib_grid(zs, bs, parallel));
}

void BM_PhibGridParallel(benchmark::State& state) { phib_grid(state, true); }
void BM_PhibGridSerial(benchmark::State& state) { phib_grid(state, false); }

BENCHMARK(BM_PhibGridParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PhibGridSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
