#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahb2apb/bus_types.hpp"

namespace ahb2apb {

class Trace;

enum class MonitorRule : std::uint8_t {
  OneHotSelect,        // Pselxout is zero or one-hot
  SetupBeforeEnable,   // enable cycle preceded by a setup cycle with the same select
  SingleCycleEnable,   // Penableout never high two cycles running
  SetupEnableStable,   // Paddrout/Pwriteout/Pselxout (and Pwdataout on writes) held into enable
};

std::string_view to_string(MonitorRule r);

struct Violation {
  std::uint64_t cycle = 0;
  MonitorRule rule = MonitorRule::OneHotSelect;
  std::string detail;
};

// Online checker for the APB protocol invariants over externally observed
// signals. Feed one snapshot per cycle, in order.
class ProtocolMonitor {
 public:
  void observe(std::uint64_t cycle, const ApbSnapshot& snap);
  void reset_history() { prev_.reset(); }

  const std::vector<Violation>& violations() const { return violations_; }
  bool clean() const { return violations_.empty(); }
  std::uint64_t cycles_checked() const { return checked_; }
  std::uint64_t enables_seen() const { return enables_; }

 private:
  void flag(std::uint64_t cycle, MonitorRule rule, std::string detail);

  std::optional<ApbSnapshot> prev_;
  std::vector<Violation> violations_;
  std::uint64_t checked_ = 0;
  std::uint64_t enables_ = 0;
};

// Replays Pselxout/Penableout/Paddrout/Pwriteout/Pwdataout from a trace
// through a fresh monitor. Cycles where resetn is low are skipped.
std::vector<Violation> check_trace(const Trace& trace);

}  // namespace ahb2apb
