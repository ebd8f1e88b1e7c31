#pragma once

#include <cstdint>
#include <vector>

#include "ahb2apb/bus_types.hpp"

namespace ahb2apb {

struct DecodeRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  unsigned select = 0;  // select line index 0..2

  friend bool operator==(const DecodeRange&, const DecodeRange&) = default;
};

// Address map from inclusive ranges to APB select lines.
class DecodeMap {
 public:
  static constexpr std::size_t kMaxEntries = 3;

  DecodeMap() = default;
  // Throws ConfigError if ranges overlap, lo > hi, an index repeats or is > 2.
  explicit DecodeMap(std::vector<DecodeRange> entries);

  // 0x80000000-0x83FFFFFF -> line 0, 0x84000000-0x87FFFFFF -> line 1,
  // 0x88000000-0x8FFFFFFF -> line 2.
  static DecodeMap default_map();

  const std::vector<DecodeRange>& entries() const { return entries_; }

  friend bool operator==(const DecodeMap&, const DecodeMap&) = default;

 private:
  std::vector<DecodeRange> entries_;
};

// One-hot select for the range containing haddr, 0 on a miss.
std::uint8_t decode_select(const DecodeMap& map, std::uint32_t haddr);

bool compute_valid(bool hreadyin, TransType htrans, std::uint8_t tempselx);

// AHB slave interface registers. valid and tempselx are the combinational
// values for the request presented this cycle; selx1/selx2 travel with
// haddr1/haddr2 so the APB select stays tied to the address being driven.
struct SlaveIfState {
  std::uint32_t haddr1 = 0;
  std::uint32_t haddr2 = 0;
  std::uint32_t hwdata1 = 0;
  std::uint32_t hwdata2 = 0;
  bool hwritereg = false;
  std::uint8_t selx1 = 0;
  std::uint8_t selx2 = 0;
  bool valid = false;
  std::uint8_t tempselx = 0;
  std::uint32_t prdata_latch = 0;

  friend bool operator==(const SlaveIfState&, const SlaveIfState&) = default;
};

// Combinational view of the request against the current registers.
SlaveIfState slave_if_eval(SlaveIfState state, const AhbRequest& req, const DecodeMap& map);

// One rising clock edge. The pipeline shifts only when the presented request
// is valid; prdata_latch follows req.prdata every cycle. The returned state
// carries valid/tempselx for `req`.
SlaveIfState slave_if_tick(const SlaveIfState& state, const AhbRequest& req, const DecodeMap& map);

}  // namespace ahb2apb
