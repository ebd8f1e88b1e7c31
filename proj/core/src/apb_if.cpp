#include "ahb2apb/apb_if.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ahb2apb {

std::string_view to_string(ResponseMode m) {
  return m == ResponseMode::OpenLoop ? "open_loop" : "closed_loop";
}

ApbSnapshot apb_stage(const FsmOutputs& outs) {
  ApbSnapshot s;
  s.paddr = outs.paddr;
  s.pwdata = outs.pwdata;
  s.pselx = outs.pselx;
  s.pwrite = outs.pwrite;
  s.penable = outs.penable;
  s.hreadyout = outs.hreadyout;
  return s;
}

std::uint8_t compute_hresp(bool transfer_attempted, bool decode_hit) {
  return (transfer_attempted && !decode_hit) ? kHrespError : kHrespOkay;
}

namespace {

constexpr std::uint32_t word_aligned(std::uint32_t addr) { return addr & ~0x3u; }

std::uint32_t parse_hex_word(std::string_view tok, std::size_t line_no) {
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) tok.remove_prefix(2);
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError("register file line " + std::to_string(line_no) + ": bad hex word '" +
                     std::string(tok) + "'");
  }
  return v;
}

}  // namespace

PeripheralResult peripheral_access(ApbPeripheral p, const ApbSnapshot& snap) {
  if (!snap.penable || snap.pselx != (1u << p.select)) {
    throw NotSelectedError("peripheral " + std::to_string(p.select) + " not selected in an enable cycle");
  }
  const std::uint32_t key = word_aligned(snap.paddr);
  PeripheralResult r;
  if (auto it = p.registers.find(key); it != p.registers.end()) r.read_data = it->second;
  if (snap.pwrite) p.registers[key] = snap.pwdata;
  r.peripheral = std::move(p);
  return r;
}

ApbPeripheral load_peripheral(std::istream& in, unsigned select) {
  ApbPeripheral p;
  p.select = select;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string addr_tok, value_tok, extra;
    if (!(ls >> addr_tok)) continue;
    if (!(ls >> value_tok) || (ls >> extra)) {
      throw ParseError("register file line " + std::to_string(line_no) + ": expected '<addr> <value>'");
    }
    const std::uint32_t addr = parse_hex_word(addr_tok, line_no);
    if (addr != word_aligned(addr)) {
      throw ParseError("register file line " + std::to_string(line_no) + ": address not word aligned");
    }
    p.registers[addr] = parse_hex_word(value_tok, line_no);
  }
  return p;
}

void dump_peripheral(std::ostream& out, const ApbPeripheral& p) {
  char buf[32];
  for (const auto& [addr, value] : p.registers) {
    std::snprintf(buf, sizeof buf, "%08x %08x\n", addr, value);
    out << buf;
  }
}

}  // namespace ahb2apb
