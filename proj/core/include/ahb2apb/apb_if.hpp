#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string_view>
#include <utility>

#include "ahb2apb/apb_fsm.hpp"
#include "ahb2apb/bus_types.hpp"

namespace ahb2apb {

enum class ResponseMode : std::uint8_t {
  OpenLoop,    // Hrdata comes from the host-supplied Prdata
  ClosedLoop,  // Hrdata comes from a modelled peripheral register file
};

std::string_view to_string(ResponseMode m);

inline constexpr std::uint8_t kHrespOkay = 0b00;
inline constexpr std::uint8_t kHrespError = 0b01;

// Register file behind one APB select line. Keys are word-aligned addresses.
struct ApbPeripheral {
  unsigned select = 0;
  std::map<std::uint32_t, std::uint32_t> registers;

  friend bool operator==(const ApbPeripheral&, const ApbPeripheral&) = default;
};

// FSM outputs onto the external Pwriteout/Penableout/Pselxout/Pwdataout/
// Paddrout/Hreadyout names. Hresp and Hrdata are left zero.
ApbSnapshot apb_stage(const FsmOutputs& outs);

// OKAY unless a transfer was attempted (hreadyin high, NONSEQ/SEQ) and the
// address missed the decode map, which answers ERROR.
std::uint8_t compute_hresp(bool transfer_attempted, bool decode_hit);

struct PeripheralResult {
  ApbPeripheral peripheral;
  // Value at paddr before the access (reads return it, writes replace it).
  std::uint32_t read_data = 0;
};

// Throws NotSelectedError unless snap is an enable cycle selecting p.
PeripheralResult peripheral_access(ApbPeripheral p, const ApbSnapshot& snap);

// Text form: one "<addr> <value>" hex pair per line; '#' starts a comment.
ApbPeripheral load_peripheral(std::istream& in, unsigned select);
void dump_peripheral(std::ostream& out, const ApbPeripheral& p);

}  // namespace ahb2apb
