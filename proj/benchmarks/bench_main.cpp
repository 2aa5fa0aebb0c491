#include <benchmark/benchmark.h>

#include "tmdyn/field.hpp"
#include "tmdyn/goedel.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/nda.hpp"
#include "tmdyn/verify.hpp"

using namespace tmdyn;

namespace {

const TuringMachine& erase() {
  static const TuringMachine m = parse_tm(
      "blank _\nsymbols _ 1\nstates q0 q1\ninitial q0\nfinal q1\n"
      "rule q0 1 -> q0 _ R\nrule q0 _ -> q1 _ S\n");
  return m;
}

const NdaMachine& erase_nda() {
  static const NdaMachine nda = compile_nda(erase(), GoedelCoding::standard(erase()));
  return nda;
}

void BM_BuildTransferFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transfer<double>(erase_nda(), n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildTransferFloat)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_BuildTransferExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transfer<Rational>(erase_nda(), n));
}
BENCHMARK(BM_BuildTransferExact)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

void BM_FpStepFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = build_transfer<double>(erase_nda(), n);
  const auto u = rasterize_rect<double>(Rect::unit(), n);
  for (auto _ : state) benchmark::DoNotOptimize(fp_step(matrix, u));
}
BENCHMARK(BM_FpStepFloat)->RangeMultiplier(2)->Range(16, 256);

void BM_FpStepExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = build_transfer<Rational>(erase_nda(), n);
  const auto u = rasterize_rect<Rational>(Rect::unit(), n);
  for (auto _ : state) benchmark::DoNotOptimize(fp_step(matrix, u));
}
BENCHMARK(BM_FpStepExact)->RangeMultiplier(2)->Range(16, 64);

void BM_Macrostep(benchmark::State& state) {
  const auto& m = erase();
  const auto s = pad_blanks(config_to_dotted(parse_configuration(m, "_ q0 1 1111111")), 16, 16);
  const Rect r0 = config_to_rect(erase_nda().coding(), s);
  for (auto _ : state) benchmark::DoNotOptimize(macrostep(erase_nda(), r0));
}
BENCHMARK(BM_Macrostep);

void BM_SymbolicCommutation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_random_machines(100, 1));
}
BENCHMARK(BM_SymbolicCommutation)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
