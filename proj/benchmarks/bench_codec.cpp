#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ahb2apb/bus_types.hpp"

using namespace ahb2apb;

namespace {

std::vector<AhbRequest> requests(std::size_t n) {
  std::mt19937_64 rng(1);
  std::vector<AhbRequest> out(n);
  for (auto& r : out) {
    r.prdata = static_cast<std::uint32_t>(rng());
    r.haddr = static_cast<std::uint32_t>(rng());
    r.hwdata = static_cast<std::uint32_t>(rng());
    r.htrans = trans_type_from_code(rng() & 3);
    r.hreadyin = rng() & 1;
    r.hwrite = rng() & 1;
  }
  return out;
}

}  // namespace

static void BM_EncodeCommand(benchmark::State& state) {
  const auto reqs = requests(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_command(reqs[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EncodeCommand);

static void BM_DecodeCommand(benchmark::State& state) {
  std::vector<CommandFrame> frames;
  for (const auto& r : requests(1024)) frames.push_back(encode_command(r));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_command(frames[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeCommand);

static void BM_ResponseHexRoundTrip(benchmark::State& state) {
  ApbSnapshot s;
  s.hrdata = 0x12345678u;
  s.paddr = 0x8C000000u;
  s.pwdata = 0x87654321u;
  s.pselx = 0b100;
  s.hreadyout = s.pwrite = s.penable = true;
  const ResponseFrame f = encode_response(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ResponseFrame::from_hex(f.to_hex()));
  }
}
BENCHMARK(BM_ResponseHexRoundTrip);

BENCHMARK_MAIN();
