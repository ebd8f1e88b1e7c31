#include "ahb2apb/ahb_slave_if.hpp"

#include <algorithm>
#include <string>

namespace ahb2apb {

DecodeMap::DecodeMap(std::vector<DecodeRange> entries) : entries_(std::move(entries)) {
  if (entries_.size() > kMaxEntries) throw ConfigError("decode map holds at most 3 entries");
  unsigned used = 0;
  for (const auto& e : entries_) {
    if (e.lo > e.hi) throw ConfigError("decode range has lo > hi");
    if (e.select > 2) throw ConfigError("select index must be 0..2, got " + std::to_string(e.select));
    if (used & (1u << e.select)) throw ConfigError("select index used twice");
    used |= 1u << e.select;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      const auto& a = entries_[i];
      const auto& b = entries_[j];
      if (a.lo <= b.hi && b.lo <= a.hi) throw ConfigError("decode ranges overlap");
    }
  }
}

DecodeMap DecodeMap::default_map() {
  return DecodeMap({
      {0x8000'0000u, 0x83FF'FFFFu, 0},
      {0x8400'0000u, 0x87FF'FFFFu, 1},
      {0x8800'0000u, 0x8FFF'FFFFu, 2},
  });
}

std::uint8_t decode_select(const DecodeMap& map, std::uint32_t haddr) {
  for (const auto& e : map.entries()) {
    if (haddr >= e.lo && haddr <= e.hi) return static_cast<std::uint8_t>(1u << e.select);
  }
  return 0;
}

bool compute_valid(bool hreadyin, TransType htrans, std::uint8_t tempselx) {
  const bool active = htrans == TransType::NonSeq || htrans == TransType::Seq;
  return hreadyin && active && tempselx != 0;
}

SlaveIfState slave_if_eval(SlaveIfState state, const AhbRequest& req, const DecodeMap& map) {
  state.tempselx = decode_select(map, req.haddr);
  state.valid = compute_valid(req.hreadyin, req.htrans, state.tempselx);
  return state;
}

SlaveIfState slave_if_tick(const SlaveIfState& state, const AhbRequest& req, const DecodeMap& map) {
  SlaveIfState next = slave_if_eval(state, req, map);
  if (next.valid) {
    next.haddr2 = state.haddr1;
    next.haddr1 = req.haddr;
    next.hwdata2 = state.hwdata1;
    next.hwdata1 = req.hwdata;
    next.selx2 = state.selx1;
    next.selx1 = next.tempselx;
    next.hwritereg = req.hwrite;
  }
  next.prdata_latch = req.prdata;
  return next;
}

}  // namespace ahb2apb
