#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "ahb2apb/bridge_core.hpp"
#include "ahb2apb/monitor.hpp"
#include "ahb2apb/spi_link.hpp"
#include "ahb2apb/trace.hpp"

namespace ahb2apb {

struct EngineConfig {
  DecodeMap map = DecodeMap::default_map();
  ResponseMode mode = ResponseMode::OpenLoop;
  unsigned reset_cycles = 4;
  // System cycles per sclk period; the high phase is divider/2 cycles.
  unsigned sclk_divider = 2;
  // Idle sclk-low cycles between the last command bit and the first
  // response clock. Must cover the bridge's worst-case latency.
  unsigned turnaround_cycles = 8;
  bool record_trace = true;
};

// Minimum turnaround: a write completes three cycles after start_transaction
// and Mapper2 loads the response on that cycle.
inline constexpr unsigned kMinTurnaroundCycles = 4;

// Throws ConfigError for a divider below 2, zero reset cycles or a
// turnaround shorter than kMinTurnaroundCycles.
void validate(const EngineConfig& cfg);

// The host side of the link: clocks a command frame out on MOSI,
// waits, then clocks the 104-bit response in from MISO.
class SpiHost {
 public:
  SpiHost(unsigned sclk_divider, unsigned turnaround_cycles);

  void queue(const CommandFrame& frame, unsigned gap_cycles);
  // Pins to drive this cycle. `may_start` gates beginning a new frame.
  SpiPins drive(bool may_start);
  // Called after the slave has been clocked; samples MISO and advances.
  // Returns a response once its last bit has been captured.
  std::optional<ResponseFrame> advance(bool miso);

  bool busy() const { return phase_ != Phase::Idle || !pending_.empty(); }
  bool mid_frame() const { return phase_ != Phase::Idle && phase_ != Phase::Gap; }

 private:
  enum class Phase { Idle, Gap, Command, Turnaround, Response };
  struct Pending {
    CommandFrame frame;
    unsigned gap;
  };

  unsigned lo_;
  unsigned hi_;
  unsigned turnaround_;
  std::deque<Pending> pending_;
  Phase phase_ = Phase::Idle;
  std::vector<bool> wire_;
  unsigned bit_ = 0;
  unsigned tick_ = 0;  // cycle within the current phase or bit period
  unsigned phase_len_ = 0;
  std::vector<bool> captured_;
};

// Deterministic cycle scheduler for the whole pipeline:
// host pins -> SPI slave -> Mapper1 -> bridge core -> Mapper2 -> trace.
class Engine {
 public:
  explicit Engine(EngineConfig cfg = {});

  // Sends a command frame over SPI after `gap_cycles` with CSN high.
  void queue_frame(const CommandFrame& frame, unsigned gap_cycles = 4);
  // Presents requests directly on the AHB side, back to back, advancing
  // whenever the bridge's Hreadyout is high.
  void queue_ahb(const std::vector<AhbRequest>& requests);

  void step();
  // Steps until no work is pending or `max_cycles` more have elapsed.
  // Returns false on timeout.
  bool run_until_idle(std::uint64_t max_cycles);
  bool busy() const;

  std::uint64_t cycle() const { return cycle_; }
  const Trace& trace() const { return trace_; }
  const std::vector<ResponseFrame>& responses() const { return responses_; }
  const std::vector<Violation>& violations() const { return monitor_.violations(); }
  const ProtocolMonitor& monitor() const { return monitor_; }
  const BridgeCore& bridge() const { return bridge_; }
  BridgeCore& bridge() { return bridge_; }
  const SpiSlaveState& spi() const { return spi_; }
  const BridgeCycle& last_cycle() const { return last_; }
  const EngineConfig& config() const { return cfg_; }

 private:
  void declare_signals();
  void record(const SpiPins& pins, const AhbRequest& req, const BridgeCycle& cyc, bool resetn);

  EngineConfig cfg_;
  SpiHost host_;
  SpiSlaveState spi_;
  BridgeCore bridge_;
  AhbRequest held_fields_;  // Mapper1 output register
  std::deque<AhbRequest> direct_;
  bool awaiting_enable_ = false;
  ResponseFrame last_response_;
  std::vector<ResponseFrame> responses_;
  ProtocolMonitor monitor_;
  Trace trace_;
  std::vector<Trace::SignalId> ids_;
  BridgeCycle last_;
  std::uint64_t cycle_ = 0;
};

}  // namespace ahb2apb
