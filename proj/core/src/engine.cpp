#include "ahb2apb/engine.hpp"

#include <algorithm>
#include <string>

namespace ahb2apb {

void validate(const EngineConfig& cfg) {
  if (cfg.sclk_divider < 2) throw ConfigError("sclk divider must be at least 2");
  if (cfg.reset_cycles == 0) throw ConfigError("reset must last at least one cycle");
  if (cfg.turnaround_cycles < kMinTurnaroundCycles) {
    throw ConfigError("turnaround must be at least " + std::to_string(kMinTurnaroundCycles) +
                      " cycles");
  }
}

// ---------------------------------------------------------------------------
// SpiHost

SpiHost::SpiHost(unsigned sclk_divider, unsigned turnaround_cycles)
    : lo_(sclk_divider - sclk_divider / 2), hi_(sclk_divider / 2), turnaround_(turnaround_cycles) {}

void SpiHost::queue(const CommandFrame& frame, unsigned gap_cycles) {
  pending_.push_back({frame, gap_cycles});
}

SpiPins SpiHost::drive(bool may_start) {
  SpiPins pins;
  if (phase_ == Phase::Idle) {
    if (pending_.empty() || !may_start) return pins;
    wire_ = pending_.front().frame.wire_bits();
    // At least one cycle with CSN high separates frames.
    phase_len_ = std::max(1u, pending_.front().gap);
    pending_.pop_front();
    phase_ = Phase::Gap;
    tick_ = 0;
  }
  switch (phase_) {
    case Phase::Idle:
    case Phase::Gap:
      break;
    case Phase::Command:
      pins.csn = false;
      pins.sclk = tick_ >= lo_;
      pins.mosi = wire_[bit_];
      break;
    case Phase::Turnaround:
      pins.csn = false;
      break;
    case Phase::Response:
      pins.csn = false;
      pins.sclk = tick_ < hi_;
      break;
  }
  return pins;
}

std::optional<ResponseFrame> SpiHost::advance(bool miso) {
  const unsigned period = lo_ + hi_;
  switch (phase_) {
    case Phase::Idle:
      break;
    case Phase::Gap:
      if (++tick_ == phase_len_) {
        phase_ = Phase::Command;
        bit_ = 0;
        tick_ = 0;
      }
      break;
    case Phase::Command:
      if (++tick_ == period) {
        tick_ = 0;
        if (++bit_ == SpiSlaveState::kCommandBits) phase_ = Phase::Turnaround;
      }
      break;
    case Phase::Turnaround:
      if (++tick_ == turnaround_) {
        phase_ = Phase::Response;
        bit_ = 0;
        tick_ = 0;
        captured_.clear();
      }
      break;
    case Phase::Response:
      // Sample at the end of the low phase, i.e. on the next rising edge.
      if (tick_ == period - 1) captured_.push_back(miso);
      if (++tick_ == period) {
        tick_ = 0;
        if (++bit_ == SpiSlaveState::kResponseBits) {
          phase_ = Phase::Idle;
          return ResponseFrame::from_wire_bits(captured_);
        }
      }
      break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

enum Sig : std::size_t {
  kResetn, kCsn, kSclk, kMosi, kMiso, kBitIndex, kStartTransaction, kTestdata,
  kPrdata, kHaddr, kHwdata, kHtrans, kHreadyin, kHwrite,
  kValid, kTempselx, kHaddr1, kHaddr2, kHwdata1, kHwdata2, kHwritereg,
  kFsmState, kPwrite, kPenable, kPselx, kPaddr, kPwdata,
  kPwriteout, kPenableout, kPselxout, kPwdataout, kPaddrout, kHreadyout, kHresp, kHrdata,
  kDataToSlave, kSignalCount
};

struct SignalDecl {
  Sig sig;
  const char* name;
  unsigned width;
};

constexpr SignalDecl kSignals[] = {
    {kResetn, "resetn", 1},
    {kCsn, "csn", 1},
    {kSclk, "sclk", 1},
    {kMosi, "mosi", 1},
    {kMiso, "miso", 1},
    {kBitIndex, "I", 32},
    {kStartTransaction, "start_transaction", 1},
    {kTestdata, "testdata", 100},
    {kPrdata, "Prdata", 32},
    {kHaddr, "Haddr", 32},
    {kHwdata, "Hwdata", 32},
    {kHtrans, "Htrans", 2},
    {kHreadyin, "Hreadyin", 1},
    {kHwrite, "Hwrite", 1},
    {kValid, "valid", 1},
    {kTempselx, "tempselx", 3},
    {kHaddr1, "Haddr1", 32},
    {kHaddr2, "Haddr2", 32},
    {kHwdata1, "Hwdata1", 32},
    {kHwdata2, "Hwdata2", 32},
    {kHwritereg, "Hwritereg", 1},
    {kFsmState, "fsm_state", 3},
    {kPwrite, "Pwrite", 1},
    {kPenable, "Penable", 1},
    {kPselx, "Pselx", 3},
    {kPaddr, "Paddr", 32},
    {kPwdata, "Pwdata", 32},
    {kPwriteout, "Pwriteout", 1},
    {kPenableout, "Penableout", 1},
    {kPselxout, "Pselxout", 3},
    {kPwdataout, "Pwdataout", 32},
    {kPaddrout, "Paddrout", 32},
    {kHreadyout, "Hreadyout", 1},
    {kHresp, "Hresp", 2},
    {kHrdata, "Hrdata", 32},
    {kDataToSlave, "data_to_slave", 104},
};
static_assert(std::size(kSignals) == kSignalCount);

template <std::size_t N>
SignalValue widen(const std::bitset<N>& b) {
  SignalValue v;
  for (std::size_t i = 0; i < N; ++i) v[i] = b[i];
  return v;
}

EngineConfig validated(EngineConfig cfg) {
  validate(cfg);
  return cfg;
}

}  // namespace

Engine::Engine(EngineConfig cfg)
    : cfg_(validated(std::move(cfg))),
      host_(cfg_.sclk_divider, cfg_.turnaround_cycles),
      bridge_(cfg_.map, cfg_.mode) {
  declare_signals();
}

void Engine::declare_signals() {
  ids_.resize(kSignalCount);
  for (const auto& d : kSignals) ids_[d.sig] = trace_.declare(d.name, d.width);
}

void Engine::queue_frame(const CommandFrame& frame, unsigned gap_cycles) {
  host_.queue(frame, gap_cycles);
}

void Engine::queue_ahb(const std::vector<AhbRequest>& requests) {
  direct_.insert(direct_.end(), requests.begin(), requests.end());
}

bool Engine::busy() const {
  return cycle_ < cfg_.reset_cycles || host_.busy() || !direct_.empty() || !bridge_.idle() ||
         awaiting_enable_;
}

bool Engine::run_until_idle(std::uint64_t max_cycles) {
  for (std::uint64_t n = 0; n < max_cycles; ++n) {
    if (!busy()) return true;
    step();
  }
  return !busy();
}

void Engine::step() {
  const bool resetn = cycle_ >= cfg_.reset_cycles;

  SpiPins pins;
  if (resetn) {
    pins = host_.drive(direct_.empty() && bridge_.idle() && !awaiting_enable_);
    spi_ = spi_tick(spi_, pins);
  } else {
    spi_ = SpiSlaveState{};
  }
  pins.miso = spi_.miso;

  // Mapper1 holds its fields; the transfer type is only presented on the
  // cycle a new frame lands, so each frame is one AHB transfer.
  AhbRequest req = held_fields_;
  req.htrans = TransType::Idle;
  bool from_direct = false;
  const bool frame_landed = resetn && spi_.start_transaction;
  if (frame_landed) {
    held_fields_ = mapper1(received_frame(spi_));
    req = held_fields_;
  } else if (resetn && !direct_.empty()) {
    req = direct_.front();
    from_direct = true;
  }

  BridgeCycle cyc = bridge_.step(req, resetn);

  if (from_direct && cyc.fsm.hreadyout) {
    direct_.pop_front();
    if (direct_.empty()) held_fields_ = req;
  }

  // Mapper2: the response is the enable cycle of the frame's transfer, or
  // the landing cycle itself when no transfer was started.
  std::optional<ApbSnapshot> capture;
  if (frame_landed) {
    if (cyc.pipe.valid) {
      awaiting_enable_ = true;
    } else {
      capture = cyc.apb;
    }
  } else if (awaiting_enable_ && cyc.apb.penable) {
    capture = cyc.apb;
    awaiting_enable_ = false;
  }
  if (capture) {
    last_response_ = mapper2(*capture);
    spi_ = load_response(spi_, last_response_);
  }

  if (resetn) {
    if (auto rsp = host_.advance(spi_.miso)) responses_.push_back(*rsp);
    monitor_.observe(cycle_, cyc.apb);
  } else {
    monitor_.reset_history();
  }

  if (cfg_.record_trace) record(pins, req, cyc, resetn);
  last_ = cyc;
  ++cycle_;
  trace_.set_cycle_count(cycle_);
}

void Engine::record(const SpiPins& pins, const AhbRequest& req, const BridgeCycle& cyc, bool resetn) {
  const auto put = [this](Sig s, std::uint64_t v) { trace_.record(ids_[s], cycle_, v); };
  put(kResetn, resetn);
  put(kCsn, pins.csn);
  put(kSclk, pins.sclk);
  put(kMosi, pins.mosi);
  put(kMiso, pins.miso);
  put(kBitIndex, spi_.bit_count);
  put(kStartTransaction, spi_.start_transaction);
  trace_.record(ids_[kTestdata], cycle_, widen(spi_.shift_in));
  put(kPrdata, req.prdata);
  put(kHaddr, req.haddr);
  put(kHwdata, req.hwdata);
  put(kHtrans, code_of(req.htrans));
  put(kHreadyin, req.hreadyin);
  put(kHwrite, req.hwrite);
  put(kValid, cyc.pipe.valid);
  put(kTempselx, cyc.pipe.tempselx);
  put(kHaddr1, cyc.pipe.haddr1);
  put(kHaddr2, cyc.pipe.haddr2);
  put(kHwdata1, cyc.pipe.hwdata1);
  put(kHwdata2, cyc.pipe.hwdata2);
  put(kHwritereg, cyc.pipe.hwritereg);
  put(kFsmState, static_cast<std::uint64_t>(cyc.state));
  put(kPwrite, cyc.fsm.pwrite);
  put(kPenable, cyc.fsm.penable);
  put(kPselx, cyc.fsm.pselx);
  put(kPaddr, cyc.fsm.paddr);
  put(kPwdata, cyc.fsm.pwdata);
  put(kPwriteout, cyc.apb.pwrite);
  put(kPenableout, cyc.apb.penable);
  put(kPselxout, cyc.apb.pselx);
  put(kPwdataout, cyc.apb.pwdata);
  put(kPaddrout, cyc.apb.paddr);
  put(kHreadyout, cyc.apb.hreadyout);
  put(kHresp, cyc.apb.hresp);
  put(kHrdata, cyc.apb.hrdata);
  trace_.record(ids_[kDataToSlave], cycle_, widen(last_response_.bits()));
}

}  // namespace ahb2apb
