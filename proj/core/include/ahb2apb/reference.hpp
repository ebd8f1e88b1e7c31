#pragma once

#include "ahb2apb/bus_types.hpp"
#include "ahb2apb/scenario.hpp"

namespace ahb2apb::reference {

// Host input row of the hardware bring-up table: a NONSEQ write of
// 0x87654321 to 0x8C000000 with host read data 0x12345678.
inline AhbRequest bringup_write_request() {
  AhbRequest r;
  r.prdata = 0x1234'5678u;
  r.haddr = 0x8C00'0000u;
  r.hwdata = 0x8765'4321u;
  r.htrans = TransType::NonSeq;
  r.hreadyin = true;
  r.hwrite = true;
  return r;
}

// Bridge-level waveform: a write of 0xFFFFFFFF to 0x8000000C with Htrans=3.
inline AhbRequest seq_write_request() {
  AhbRequest r;
  r.prdata = 0x5678'1234u;
  r.haddr = 0x8000'000Cu;
  r.hwdata = 0xFFFF'FFFFu;
  r.htrans = TransType::Seq;
  r.hreadyin = true;
  r.hwrite = true;
  return r;
}

inline Scenario single_frame_scenario(const AhbRequest& req) {
  Scenario s;
  s.cycles = 1;
  s.frames.push_back({encode_command(req), 4});
  return s;
}

}  // namespace ahb2apb::reference
