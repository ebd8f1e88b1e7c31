#include "ahb2apb/bus_types.hpp"

namespace ahb2apb {

TransType trans_type_from_code(unsigned code) {
  if (code > 3) throw InvariantError("htrans code out of range: " + std::to_string(code));
  return static_cast<TransType>(code);
}

std::string_view to_string(TransType t) {
  switch (t) {
    case TransType::Idle: return "IDLE";
    case TransType::Busy: return "BUSY";
    case TransType::NonSeq: return "NONSEQ";
    case TransType::Seq: return "SEQ";
  }
  return "?";
}

void validate(const ApbSnapshot& snap) {
  if (!is_zero_or_one_hot(snap.pselx)) {
    throw InvariantError("pselx must be zero or one-hot, got " + std::to_string(snap.pselx));
  }
  if (snap.hresp > 3) throw InvariantError("hresp wider than 2 bits");
  if (snap.penable && snap.pselx == 0) throw InvariantError("penable asserted with pselx == 0");
}

namespace {

enum CommandField { kPrdata, kHaddr, kHwdata, kHtrans, kHreadyin, kHwrite };
enum ResponseField { kHrdata, kPaddr, kPwdata, kPselx, kHresp, kHreadyout, kPwrite, kPenable };

template <std::size_t N, std::size_t M>
void put(Frame<N>& f, const std::array<FieldSlice, M>& layout, std::size_t idx, std::uint64_t v) {
  f.set_field(layout[idx].lsb, layout[idx].width, v);
}

template <std::size_t N, std::size_t M>
std::uint64_t get(const Frame<N>& f, const std::array<FieldSlice, M>& layout, std::size_t idx) {
  return f.field(layout[idx].lsb, layout[idx].width);
}

}  // namespace

CommandFrame encode_command(const AhbRequest& req) {
  CommandFrame f;
  put(f, kCommandLayout, kPrdata, req.prdata);
  put(f, kCommandLayout, kHaddr, req.haddr);
  put(f, kCommandLayout, kHwdata, req.hwdata);
  put(f, kCommandLayout, kHtrans, code_of(req.htrans));
  put(f, kCommandLayout, kHreadyin, req.hreadyin);
  put(f, kCommandLayout, kHwrite, req.hwrite);
  return f;
}

AhbRequest decode_command(const CommandFrame& frame) {
  AhbRequest r;
  r.prdata = static_cast<std::uint32_t>(get(frame, kCommandLayout, kPrdata));
  r.haddr = static_cast<std::uint32_t>(get(frame, kCommandLayout, kHaddr));
  r.hwdata = static_cast<std::uint32_t>(get(frame, kCommandLayout, kHwdata));
  r.htrans = trans_type_from_code(static_cast<unsigned>(get(frame, kCommandLayout, kHtrans)));
  r.hreadyin = get(frame, kCommandLayout, kHreadyin) != 0;
  r.hwrite = get(frame, kCommandLayout, kHwrite) != 0;
  return r;
}

AhbRequest decode_command(const std::vector<bool>& wire) {
  return decode_command(CommandFrame::from_wire_bits(wire));
}

ResponseFrame encode_response(const ApbSnapshot& snap) {
  validate(snap);
  ResponseFrame f;
  put(f, kResponseLayout, kHrdata, snap.hrdata);
  put(f, kResponseLayout, kPaddr, snap.paddr);
  put(f, kResponseLayout, kPwdata, snap.pwdata);
  put(f, kResponseLayout, kPselx, snap.pselx);
  put(f, kResponseLayout, kHresp, snap.hresp);
  put(f, kResponseLayout, kHreadyout, snap.hreadyout);
  put(f, kResponseLayout, kPwrite, snap.pwrite);
  put(f, kResponseLayout, kPenable, snap.penable);
  return f;
}

// Host-side decoder: reports what is on the wire without re-validating it.
ApbSnapshot decode_response(const ResponseFrame& frame) {
  ApbSnapshot s;
  s.hrdata = static_cast<std::uint32_t>(get(frame, kResponseLayout, kHrdata));
  s.paddr = static_cast<std::uint32_t>(get(frame, kResponseLayout, kPaddr));
  s.pwdata = static_cast<std::uint32_t>(get(frame, kResponseLayout, kPwdata));
  s.pselx = static_cast<std::uint8_t>(get(frame, kResponseLayout, kPselx));
  s.hresp = static_cast<std::uint8_t>(get(frame, kResponseLayout, kHresp));
  s.hreadyout = get(frame, kResponseLayout, kHreadyout) != 0;
  s.pwrite = get(frame, kResponseLayout, kPwrite) != 0;
  s.penable = get(frame, kResponseLayout, kPenable) != 0;
  return s;
}

ApbSnapshot decode_response(const std::vector<bool>& wire) {
  return decode_response(ResponseFrame::from_wire_bits(wire));
}

namespace detail {

std::string bits_to_hex(const std::vector<bool>& msb_first, std::size_t digits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(digits, '0');
  // Right-align: bit k from the end lands in nibble k/4 from the end.
  const std::size_t n = msb_first.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!msb_first[n - 1 - k]) continue;
    const std::size_t nib = k / 4;
    if (nib >= digits) throw FrameLengthError("value does not fit in hex width");
    char& c = out[digits - 1 - nib];
    const unsigned v = static_cast<unsigned>(c <= '9' ? c - '0' : c - 'a' + 10) | (1u << (k % 4));
    c = kDigits[v];
  }
  return out;
}

std::vector<bool> hex_to_bits(std::string_view hex) {
  std::vector<bool> out;
  out.reserve(hex.size() * 4);
  for (char c : hex) {
    unsigned v;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw ParseError(std::string("invalid hex digit '") + c + "'");
    }
    for (int b = 3; b >= 0; --b) out.push_back(((v >> b) & 1u) != 0);
  }
  return out;
}

}  // namespace detail

}  // namespace ahb2apb
