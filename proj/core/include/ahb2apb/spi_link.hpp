#pragma once

#include <bitset>
#include <cstdint>

#include "ahb2apb/bus_types.hpp"

namespace ahb2apb {

struct SpiPins {
  bool sclk = false;
  bool mosi = false;
  bool miso = false;
  bool csn = true;  // active low
};

// SPI mode 0 slave clocked by the system clock: MOSI is sampled on a rising
// sclk edge, MISO changes on a falling edge, both MSB first.
struct SpiSlaveState {
  static constexpr unsigned kCommandBits = 100;
  static constexpr unsigned kResponseBits = 104;

  std::bitset<kCommandBits> shift_in;
  unsigned bit_count = 0;
  std::bitset<kResponseBits> shift_out;
  // kResponseBits when nothing is queued for MISO.
  unsigned out_count = kResponseBits;
  // Set once a rising edge follows load_response; the falling edge that
  // closes the last command bit must not shift the response out early.
  bool out_clocked = false;
  bool start_transaction = false;
  bool last_sclk = false;
  bool miso = false;

  friend bool operator==(const SpiSlaveState&, const SpiSlaveState&) = default;
};

// One system-clock cycle. start_transaction is high in the returned state
// only on the cycle that completed a 100-bit frame. csn high drops any
// partial frame and any pending response.
SpiSlaveState spi_tick(const SpiSlaveState& state, const SpiPins& pins);

// Queues a response for MISO. Throws BusyError if one is mid-transmission.
SpiSlaveState load_response(const SpiSlaveState& state, const ResponseFrame& frame);

inline CommandFrame received_frame(const SpiSlaveState& state) { return CommandFrame(state.shift_in); }

// Mapper1: the 100-bit frame split into AHB signals.
inline AhbRequest mapper1(const CommandFrame& frame) { return decode_command(frame); }
// Mapper2: bridge outputs packed into the 104-bit frame for MISO.
inline ResponseFrame mapper2(const ApbSnapshot& snap) { return encode_response(snap); }

}  // namespace ahb2apb
