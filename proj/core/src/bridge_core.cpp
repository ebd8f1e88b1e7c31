#include "ahb2apb/bridge_core.hpp"

#include <bit>

namespace ahb2apb {

BridgeCore::BridgeCore(DecodeMap map, ResponseMode mode) : map_(std::move(map)), mode_(mode) {
  for (unsigned i = 0; i < peripherals_.size(); ++i) peripherals_[i].select = i;
}

void BridgeCore::reset() {
  state_ = FsmState::Idle;
  pipe_ = SlaveIfState{};
  hrdata_ = 0;
}

BridgeCycle BridgeCore::step(const AhbRequest& req, bool resetn) {
  BridgeCycle cyc;
  cyc.req = req;
  if (!resetn) {
    reset();
    cyc.in_reset = true;
    cyc.pipe = pipe_;
    return cyc;
  }

  cyc.state = state_;
  cyc.fsm = fsm_outputs(state_, pipe_);

  AhbRequest presented = req;
  presented.hreadyin = req.hreadyin && cyc.fsm.hreadyout;
  cyc.bus_hready = presented.hreadyin;
  cyc.pipe = slave_if_eval(pipe_, presented, map_);

  cyc.apb = apb_stage(cyc.fsm);
  const bool attempted = presented.hreadyin &&
                         (presented.htrans == TransType::NonSeq || presented.htrans == TransType::Seq);
  cyc.apb.hresp = compute_hresp(attempted, cyc.pipe.tempselx != 0);

  if (cyc.apb.penable) {
    if (mode_ == ResponseMode::OpenLoop) {
      hrdata_ = pipe_.prdata_latch;
    } else {
      const unsigned sel = static_cast<unsigned>(std::countr_zero(cyc.apb.pselx));
      auto result = peripheral_access(peripherals_.at(sel), cyc.apb);
      peripherals_[sel] = std::move(result.peripheral);
      // AHB writes carry no read data; Hrdata keeps its last value.
      if (!cyc.apb.pwrite) hrdata_ = result.read_data;
    }
  }
  cyc.apb.hrdata = hrdata_;

  const bool hwritereg = pipe_.hwritereg;
  pipe_ = slave_if_tick(pipe_, presented, map_);
  state_ = fsm_next(state_, cyc.pipe.valid, presented.hwrite, hwritereg);
  return cyc;
}

}  // namespace ahb2apb
