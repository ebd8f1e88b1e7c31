#include <benchmark/benchmark.h>

#include <random>

#include "ahb2apb/apb_fsm.hpp"
#include "ahb2apb/bridge_core.hpp"

using namespace ahb2apb;

static void BM_FsmNext(benchmark::State& state) {
  FsmState s = FsmState::Idle;
  unsigned in = 0;
  for (auto _ : state) {
    in = in * 1103515245u + 12345u;
    s = fsm_next(s, in & 0x100, in & 0x200, in & 0x400);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FsmNext);

// Back-to-back writes straight into the bridge core.
static void BM_BridgeCoreWrites(benchmark::State& state) {
  BridgeCore core;
  AhbRequest w;
  w.haddr = 0x80000000u;
  w.htrans = TransType::Seq;
  w.hwrite = true;
  w.hreadyin = true;
  for (auto _ : state) {
    const BridgeCycle c = core.step(w);
    benchmark::DoNotOptimize(c.apb);
    w.haddr = 0x80000000u | ((w.haddr + 4) & 0x0FFFFFFCu);
    ++w.hwdata;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BridgeCoreWrites);

BENCHMARK_MAIN();
