#include <gtest/gtest.h>

#include <random>

#include "ahb2apb/errors.hpp"
#include "ahb2apb/reference.hpp"
#include "ahb2apb/spi_link.hpp"
#include "oracles.hpp"

using namespace ahb2apb;

namespace {

// Clocks `bits` into the slave with one low and one high system cycle per bit.
// Returns the number of start_transaction pulses seen.
int clock_in(SpiSlaveState& s, const std::vector<bool>& bits) {
  int starts = 0;
  for (bool b : bits) {
    s = spi_tick(s, {false, b, false, false});
    starts += s.start_transaction;
    s = spi_tick(s, {true, b, false, false});
    starts += s.start_transaction;
  }
  return starts;
}

// Clocks a queued response out: sclk high then low per bit, sampling MISO
// after the falling edge.
std::vector<bool> clock_out(SpiSlaveState& s, std::size_t n) {
  std::vector<bool> got;
  for (std::size_t i = 0; i < n; ++i) {
    s = spi_tick(s, {true, false, false, false});
    s = spi_tick(s, {false, false, false, false});
    got.push_back(s.miso);
  }
  return got;
}

}  // namespace

TEST(SpiSlave, HundredRisingEdgesGiveOneStart) {
  std::mt19937_64 rng(11);
  const auto bits = oracle::random_wire(rng, 100);
  SpiSlaveState s;
  s = spi_tick(s, {false, false, false, false});
  int starts = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    s = spi_tick(s, {false, bits[i], false, false});
    EXPECT_FALSE(s.start_transaction);
    s = spi_tick(s, {true, bits[i], false, false});
    if (i < 99) {
      EXPECT_FALSE(s.start_transaction) << i;
      EXPECT_EQ(s.bit_count, i + 1);
    }
    starts += s.start_transaction;
  }
  EXPECT_EQ(starts, 1);
  EXPECT_TRUE(s.start_transaction);
  EXPECT_EQ(received_frame(s).wire_bits(), bits);
  EXPECT_EQ(mapper1(received_frame(s)), oracle::command_fields(bits));
  s = spi_tick(s, {true, false, false, false});
  EXPECT_FALSE(s.start_transaction);
}

TEST(SpiSlave, CsnHighHoldsAndClearsCounter) {
  SpiSlaveState s;
  clock_in(s, std::vector<bool>(40, true));
  EXPECT_EQ(s.bit_count, 40u);
  const auto shifted = s.shift_in;
  for (int i = 0; i < 10; ++i) {
    s = spi_tick(s, {i % 2 == 0, true, false, true});
    EXPECT_FALSE(s.start_transaction);
    EXPECT_EQ(s.bit_count, 0u);
    EXPECT_EQ(s.shift_in, shifted);
  }
  // A partial frame never completes: 60 more bits are not enough.
  s = spi_tick(s, {false, false, false, false});
  EXPECT_EQ(clock_in(s, std::vector<bool>(60, false)), 0);
  EXPECT_EQ(clock_in(s, std::vector<bool>(40, false)), 1);
}

TEST(SpiSlave, StartsCountedAcrossCsnGaps) {
  std::mt19937_64 rng(21);
  SpiSlaveState s;
  int starts = 0;
  for (int frame = 0; frame < 20; ++frame) {
    starts += clock_in(s, oracle::random_wire(rng, 100));
    for (unsigned g = 0; g < 1 + rng() % 5; ++g) s = spi_tick(s, {false, false, false, true});
  }
  EXPECT_EQ(starts, 20);
}

TEST(SpiSlave, ResponseShiftsOutMsbFirst) {
  std::mt19937_64 rng(4);
  std::vector<ResponseFrame> frames;
  ResponseFrame ones;
  for (std::size_t i = 0; i < 104; ++i) ones.set_bit(i, true);
  frames.push_back(ones);
  ApbSnapshot t1;
  t1.hrdata = 0x12345678u;
  t1.paddr = 0x8C000000u;
  t1.pwdata = 0x87654321u;
  t1.pselx = 0b100;
  t1.hreadyout = true;
  t1.pwrite = true;
  t1.penable = true;
  frames.push_back(mapper2(t1));
  for (int i = 0; i < 50; ++i) frames.push_back(ResponseFrame::from_wire_bits(oracle::random_wire(rng, 104)));

  for (const auto& f : frames) {
    SpiSlaveState s;
    s = spi_tick(s, {false, false, false, false});
    s = load_response(s, f);
    EXPECT_EQ(clock_out(s, 104), f.wire_bits());
    EXPECT_EQ(s.out_count, 104u);
  }
  EXPECT_EQ(oracle::response_fields(frames[1].wire_bits()), t1);
}

TEST(SpiSlave, MisoChangesOnlyOnFallingEdges) {
  std::mt19937_64 rng(8);
  SpiSlaveState s;
  s = spi_tick(s, {false, false, false, false});
  s = load_response(s, ResponseFrame::from_wire_bits(oracle::random_wire(rng, 104)));
  bool sclk = false;
  for (int i = 0; i < 600; ++i) {
    const bool next_sclk = (i / 3) % 2 == 1;
    const bool prev_miso = s.miso;
    s = spi_tick(s, {next_sclk, false, false, false});
    if (s.miso != prev_miso) {
      EXPECT_TRUE(sclk && !next_sclk) << "cycle " << i;
    }
    sclk = next_sclk;
  }
}

TEST(SpiSlave, LoadWhileTransmittingIsBusy) {
  SpiSlaveState s;
  s = load_response(s, ResponseFrame{});
  EXPECT_NO_THROW(load_response(s, ResponseFrame{}));
  clock_out(s, 3);
  EXPECT_THROW(load_response(s, ResponseFrame{}), BusyError);
  clock_out(s, 101);
  EXPECT_NO_THROW(load_response(s, ResponseFrame{}));
}

TEST(SpiSlave, MosiIgnoredWhileTransmitting) {
  SpiSlaveState s;
  s = load_response(s, ResponseFrame{});
  for (int i = 0; i < 104; ++i) {
    s = spi_tick(s, {true, true, false, false});
    EXPECT_FALSE(s.start_transaction);
    s = spi_tick(s, {false, true, false, false});
  }
  EXPECT_EQ(s.bit_count, 0u);
}

TEST(SpiSlave, CsnHighDropsPendingResponse) {
  SpiSlaveState s;
  s = load_response(s, ResponseFrame{});
  clock_out(s, 10);
  s = spi_tick(s, {false, false, false, true});
  EXPECT_EQ(s.out_count, 104u);
  EXPECT_NO_THROW(load_response(s, ResponseFrame{}));
}

TEST(SpiSlave, ResponseLoadedWithSclkHighWaitsForNextRisingEdge) {
  std::mt19937_64 rng(13);
  const ResponseFrame f = ResponseFrame::from_wire_bits(oracle::random_wire(rng, 104));
  SpiSlaveState s;
  s = spi_tick(s, {true, false, false, false});
  s = load_response(s, f);
  const bool idle_miso = s.miso;
  s = spi_tick(s, {false, false, false, false});
  EXPECT_EQ(s.out_count, 0u);
  EXPECT_EQ(s.miso, idle_miso);
  EXPECT_EQ(clock_out(s, 104), f.wire_bits());
}
