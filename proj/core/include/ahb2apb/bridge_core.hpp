#pragma once

#include <array>

#include "ahb2apb/ahb_slave_if.hpp"
#include "ahb2apb/apb_fsm.hpp"
#include "ahb2apb/apb_if.hpp"

namespace ahb2apb {

// Everything the bridge shows during one clock cycle, computed from the
// registers before the rising edge that ends it.
struct BridgeCycle {
  AhbRequest req;         // as presented by the master
  bool bus_hready = false;  // req.hreadyin gated by the bridge's own Hreadyout
  SlaveIfState pipe;      // registers, with valid/tempselx for this request
  FsmState state = FsmState::Idle;
  FsmOutputs fsm;
  ApbSnapshot apb;        // Pwriteout..Paddrout, Hreadyout, Hresp, Hrdata
  bool in_reset = false;
};

// AHB slave interface + APB FSM controller + APB interface, clocked together.
//
// The slave interface samples a transfer only while the bus is ready
// (Hreadyin and the bridge's own Hreadyout), which is how a single-slave
// AHB-lite bus loops HREADYOUT back to HREADYIN.
class BridgeCore {
 public:
  explicit BridgeCore(DecodeMap map = DecodeMap::default_map(),
                      ResponseMode mode = ResponseMode::OpenLoop);

  // Evaluates one cycle for `req` and applies the rising edge.
  BridgeCycle step(const AhbRequest& req, bool resetn = true);

  void reset();

  FsmState state() const { return state_; }
  const SlaveIfState& pipe() const { return pipe_; }
  bool hreadyout() const { return fsm_hreadyout(state_, pipe_.hwritereg); }
  bool idle() const { return state_ == FsmState::Idle; }
  const DecodeMap& map() const { return map_; }
  ResponseMode mode() const { return mode_; }

  ApbPeripheral& peripheral(unsigned select) { return peripherals_.at(select); }
  const ApbPeripheral& peripheral(unsigned select) const { return peripherals_.at(select); }

 private:
  DecodeMap map_;
  ResponseMode mode_;
  FsmState state_ = FsmState::Idle;
  SlaveIfState pipe_;
  std::uint32_t hrdata_ = 0;
  std::array<ApbPeripheral, 3> peripherals_;
};

}  // namespace ahb2apb
