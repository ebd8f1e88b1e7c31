#include "ahb2apb/monitor.hpp"

#include <cstdio>

#include "ahb2apb/trace.hpp"

namespace ahb2apb {

std::string_view to_string(MonitorRule r) {
  switch (r) {
    case MonitorRule::OneHotSelect: return "one-hot-pselx";
    case MonitorRule::SetupBeforeEnable: return "setup-before-enable";
    case MonitorRule::SingleCycleEnable: return "single-cycle-penable";
    case MonitorRule::SetupEnableStable: return "setup-enable-stability";
  }
  return "?";
}

void ProtocolMonitor::flag(std::uint64_t cycle, MonitorRule rule, std::string detail) {
  violations_.push_back({cycle, rule, std::move(detail)});
}

void ProtocolMonitor::observe(std::uint64_t cycle, const ApbSnapshot& s) {
  ++checked_;
  if (!is_zero_or_one_hot(s.pselx)) {
    flag(cycle, MonitorRule::OneHotSelect, "pselx=" + std::to_string(s.pselx));
  }
  if (s.penable) {
    ++enables_;
    if (s.pselx == 0) flag(cycle, MonitorRule::SetupBeforeEnable, "penable with pselx=0");
    if (!prev_) {
      flag(cycle, MonitorRule::SetupBeforeEnable, "enable without a preceding cycle");
    } else if (prev_->penable) {
      flag(cycle, MonitorRule::SingleCycleEnable, "penable high on consecutive cycles");
    } else {
      if (prev_->pselx != s.pselx) {
        flag(cycle, MonitorRule::SetupBeforeEnable, "setup pselx differs from enable pselx");
      }
      if (prev_->paddr != s.paddr || prev_->pwrite != s.pwrite ||
          (s.pwrite && prev_->pwdata != s.pwdata)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "setup paddr=%08x pwrite=%d, enable paddr=%08x pwrite=%d",
                      prev_->paddr, prev_->pwrite, s.paddr, s.pwrite);
        flag(cycle, MonitorRule::SetupEnableStable, buf);
      }
    }
  }
  prev_ = s;
}

std::vector<Violation> check_trace(const Trace& trace) {
  const auto id = [&trace](std::string_view name) {
    auto i = trace.find(name);
    if (!i) throw std::out_of_range("trace lacks signal " + std::string(name));
    return *i;
  };
  const auto pselx = id("Pselxout");
  const auto penable = id("Penableout");
  const auto paddr = id("Paddrout");
  const auto pwrite = id("Pwriteout");
  const auto pwdata = id("Pwdataout");
  const auto resetn = trace.find("resetn");

  // Walk change lists with cursors instead of per-cycle lookups.
  const std::size_t ids[] = {pselx, penable, paddr, pwrite, pwdata};
  std::size_t cursor[5] = {};
  SignalValue cur[5];
  std::size_t reset_cursor = 0;
  bool in_reset = false;

  ProtocolMonitor mon;
  for (std::uint64_t c = 0; c < trace.cycle_count(); ++c) {
    for (int k = 0; k < 5; ++k) {
      const auto& ch = trace.signals()[ids[k]].changes;
      while (cursor[k] < ch.size() && ch[cursor[k]].cycle <= c) cur[k] = ch[cursor[k]++].value;
    }
    if (resetn) {
      const auto& ch = trace.signals()[*resetn].changes;
      while (reset_cursor < ch.size() && ch[reset_cursor].cycle <= c) {
        in_reset = !ch[reset_cursor++].value.test(0);
      }
      if (in_reset) {
        mon.reset_history();
        continue;
      }
    }
    ApbSnapshot s;
    s.pselx = static_cast<std::uint8_t>(to_u64(cur[0]));
    s.penable = cur[1].test(0);
    s.paddr = static_cast<std::uint32_t>(to_u64(cur[2]));
    s.pwrite = cur[3].test(0);
    s.pwdata = static_cast<std::uint32_t>(to_u64(cur[4]));
    mon.observe(c, s);
  }
  return mon.violations();
}

}  // namespace ahb2apb
