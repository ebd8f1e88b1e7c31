#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ahb2apb/ahb_slave_if.hpp"

namespace ahb2apb {

enum class FsmState : std::uint8_t {
  Idle = 0,
  Read,
  REnable,
  WWait,
  Write,
  WriteP,
  WEnable,
  WEnableP,
};

inline constexpr std::array<FsmState, 8> kAllFsmStates{
    FsmState::Idle,  FsmState::Read,   FsmState::REnable, FsmState::WWait,
    FsmState::Write, FsmState::WriteP, FsmState::WEnable, FsmState::WEnableP,
};

std::string_view to_string(FsmState s);
// Accepts the upper-case names printed by to_string ("IDLE", "WENABLEP", ...).
std::optional<FsmState> fsm_state_from_string(std::string_view name);

FsmState fsm_next(FsmState state, bool valid, bool hwrite, bool hwritereg);

struct FsmOutputs {
  bool pwrite = false;
  bool penable = false;
  std::uint8_t pselx = 0;
  std::uint32_t paddr = 0;
  std::uint32_t pwdata = 0;
  bool hreadyout = false;

  friend bool operator==(const FsmOutputs&, const FsmOutputs&) = default;
};

// Whether the bridge can take a new AHB transfer this cycle. Low in the
// setup states and in WENABLEP while a read is queued in haddr1, since a new
// transfer there would overwrite the queued one.
bool fsm_hreadyout(FsmState state, bool hwritereg);

// Moore outputs. The pipelined states (WRITEP, WENABLEP) drive the second
// register stage; everything else drives the first.
FsmOutputs fsm_outputs(FsmState state, const SlaveIfState& pipe);

// Guard over the three FSM inputs; unset members are don't-care.
struct Guard {
  std::optional<bool> valid;
  std::optional<bool> hwrite;
  std::optional<bool> hwritereg;

  bool matches(bool v, bool hw, bool hwr) const;
  // "valid∧hwrite", "¬valid", "1" for an unconditional edge.
  std::string label() const;
};

struct FsmEdge {
  FsmState from;
  FsmState to;
  Guard guard;
};

// The transition relation as guarded edges, one per arc of the state diagram.
const std::vector<FsmEdge>& fsm_edges();

// Graphviz rendering of fsm_edges().
std::string fsm_to_dot();

}  // namespace ahb2apb
