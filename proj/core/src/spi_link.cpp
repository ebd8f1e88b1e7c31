#include "ahb2apb/spi_link.hpp"

namespace ahb2apb {

SpiSlaveState spi_tick(const SpiSlaveState& state, const SpiPins& pins) {
  SpiSlaveState next = state;
  next.start_transaction = false;
  next.last_sclk = pins.sclk;
  const bool rising = !state.last_sclk && pins.sclk;
  const bool falling = state.last_sclk && !pins.sclk;

  if (pins.csn) {
    next.bit_count = 0;
    next.out_count = SpiSlaveState::kResponseBits;
    next.out_clocked = false;
    return next;
  }

  // Half duplex: MOSI is ignored while a response is being clocked out.
  const bool transmitting = next.out_count < SpiSlaveState::kResponseBits;
  if (rising && !transmitting) {
    next.shift_in <<= 1;
    next.shift_in[0] = pins.mosi;
    if (++next.bit_count == SpiSlaveState::kCommandBits) {
      next.start_transaction = true;
      next.bit_count = 0;
    }
  }
  if (rising && transmitting) next.out_clocked = true;
  if (falling && next.out_clocked && next.out_count < SpiSlaveState::kResponseBits) {
    next.miso = next.shift_out[SpiSlaveState::kResponseBits - 1 - next.out_count];
    ++next.out_count;
  }
  return next;
}

SpiSlaveState load_response(const SpiSlaveState& state, const ResponseFrame& frame) {
  if (state.out_count != 0 && state.out_count != SpiSlaveState::kResponseBits) {
    throw BusyError("response transmission in progress (" + std::to_string(state.out_count) +
                    " of 104 bits sent)");
  }
  SpiSlaveState next = state;
  next.shift_out = frame.bits();
  next.out_count = 0;
  next.out_clocked = false;
  return next;
}

}  // namespace ahb2apb
