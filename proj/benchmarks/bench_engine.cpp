#include <benchmark/benchmark.h>

#include <random>

#include "ahb2apb/scenario.hpp"

using namespace ahb2apb;

namespace {

Scenario random_frames(std::size_t n) {
  std::mt19937_64 rng(7);
  Scenario s;
  for (std::size_t i = 0; i < n; ++i) {
    AhbRequest r;
    r.prdata = static_cast<std::uint32_t>(rng());
    r.haddr = 0x80000000u | (static_cast<std::uint32_t>(rng()) & 0x0FFFFFFCu);
    r.hwdata = static_cast<std::uint32_t>(rng());
    r.htrans = TransType::NonSeq;
    r.hreadyin = true;
    r.hwrite = rng() & 1;
    s.frames.push_back({encode_command(r), 4});
  }
  return s;
}

}  // namespace

// Whole pipeline, SPI included; items are frames.
static void BM_EngineFrames(benchmark::State& state) {
  const Scenario s = random_frames(static_cast<std::size_t>(state.range(0)));
  const bool traced = state.range(1) != 0;
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    const RunResult r = run(s, traced);
    cycles += r.cycles;
    benchmark::DoNotOptimize(r.responses.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["cycles/s"] = benchmark::Counter(static_cast<double>(cycles), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EngineFrames)->Args({100, 0})->Args({100, 1})->Args({1000, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
