#include "ahb2apb/apb_fsm.hpp"

#include <sstream>

namespace ahb2apb {

std::string_view to_string(FsmState s) {
  switch (s) {
    case FsmState::Idle: return "IDLE";
    case FsmState::Read: return "READ";
    case FsmState::REnable: return "RENABLE";
    case FsmState::WWait: return "WWAIT";
    case FsmState::Write: return "WRITE";
    case FsmState::WriteP: return "WRITEP";
    case FsmState::WEnable: return "WENABLE";
    case FsmState::WEnableP: return "WENABLEP";
  }
  return "?";
}

std::optional<FsmState> fsm_state_from_string(std::string_view name) {
  for (FsmState s : kAllFsmStates) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

FsmState from_idle_like(bool valid, bool hwrite) {
  if (!valid) return FsmState::Idle;
  return hwrite ? FsmState::WWait : FsmState::Read;
}

}  // namespace

FsmState fsm_next(FsmState state, bool valid, bool hwrite, bool hwritereg) {
  switch (state) {
    case FsmState::Idle:
    case FsmState::REnable:
    case FsmState::WEnable:
      return from_idle_like(valid, hwrite);
    case FsmState::WWait:
      return valid ? FsmState::WriteP : FsmState::Write;
    case FsmState::Read:
      return FsmState::REnable;
    case FsmState::Write:
      return valid ? FsmState::WEnableP : FsmState::WEnable;
    case FsmState::WriteP:
      return FsmState::WEnableP;
    case FsmState::WEnableP:
      if (!hwritereg) return FsmState::Read;
      return valid ? FsmState::WriteP : FsmState::Write;
  }
  return FsmState::Idle;
}

bool fsm_hreadyout(FsmState state, bool hwritereg) {
  switch (state) {
    case FsmState::Idle:
    case FsmState::WWait:
    case FsmState::REnable:
    case FsmState::WEnable:
      return true;
    case FsmState::WEnableP:
      return hwritereg;
    case FsmState::Read:
    case FsmState::Write:
    case FsmState::WriteP:
      return false;
  }
  return false;
}

FsmOutputs fsm_outputs(FsmState state, const SlaveIfState& pipe) {
  FsmOutputs out;
  const bool pipelined = state == FsmState::WriteP || state == FsmState::WEnableP;
  out.paddr = pipelined ? pipe.haddr2 : pipe.haddr1;
  out.pwdata = pipelined ? pipe.hwdata2 : pipe.hwdata1;
  out.hreadyout = fsm_hreadyout(state, pipe.hwritereg);

  switch (state) {
    case FsmState::Idle:
    case FsmState::WWait:
      break;
    case FsmState::Read:
      out.pselx = pipe.selx1;
      break;
    case FsmState::REnable:
      out.pselx = pipe.selx1;
      out.penable = true;
      break;
    case FsmState::Write:
      out.pselx = pipe.selx1;
      out.pwrite = true;
      break;
    case FsmState::WEnable:
      out.pselx = pipe.selx1;
      out.pwrite = true;
      out.penable = true;
      break;
    case FsmState::WriteP:
      out.pselx = pipe.selx2;
      out.pwrite = true;
      break;
    case FsmState::WEnableP:
      out.pselx = pipe.selx2;
      out.pwrite = true;
      out.penable = true;
      break;
  }
  return out;
}

bool Guard::matches(bool v, bool hw, bool hwr) const {
  return (!valid || *valid == v) && (!hwrite || *hwrite == hw) && (!hwritereg || *hwritereg == hwr);
}

std::string Guard::label() const {
  std::string out;
  auto term = [&out](const std::optional<bool>& g, std::string_view name) {
    if (!g) return;
    if (!out.empty()) out += "∧";
    if (!*g) out += "¬";
    out += name;
  };
  term(valid, "valid");
  term(hwrite, "hwrite");
  term(hwritereg, "hwritereg");
  return out.empty() ? "1" : out;
}

const std::vector<FsmEdge>& fsm_edges() {
  using S = FsmState;
  static const std::vector<FsmEdge> edges = [] {
    std::vector<FsmEdge> e;
    for (S s : {S::Idle, S::REnable, S::WEnable}) {
      e.push_back({s, S::WWait, {true, true, std::nullopt}});
      e.push_back({s, S::Read, {true, false, std::nullopt}});
      e.push_back({s, S::Idle, {false, std::nullopt, std::nullopt}});
    }
    e.push_back({S::WWait, S::WriteP, {true, std::nullopt, std::nullopt}});
    e.push_back({S::WWait, S::Write, {false, std::nullopt, std::nullopt}});
    e.push_back({S::Read, S::REnable, {}});
    e.push_back({S::Write, S::WEnableP, {true, std::nullopt, std::nullopt}});
    e.push_back({S::Write, S::WEnable, {false, std::nullopt, std::nullopt}});
    e.push_back({S::WriteP, S::WEnableP, {}});
    e.push_back({S::WEnableP, S::WriteP, {true, std::nullopt, true}});
    e.push_back({S::WEnableP, S::Write, {false, std::nullopt, true}});
    e.push_back({S::WEnableP, S::Read, {std::nullopt, std::nullopt, false}});
    return e;
  }();
  return edges;
}

std::string fsm_to_dot() {
  std::ostringstream os;
  os << "digraph apb_fsm {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (FsmState s : kAllFsmStates) os << "  " << to_string(s) << ";\n";
  for (const auto& e : fsm_edges()) {
    os << "  " << to_string(e.from) << " -> " << to_string(e.to) << " [label=\""
       << e.guard.label() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ahb2apb
