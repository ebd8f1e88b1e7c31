#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ahb2apb/errors.hpp"

namespace ahb2apb {

// AHB HTRANS encoding.
enum class TransType : std::uint8_t { Idle = 0, Busy = 1, NonSeq = 2, Seq = 3 };

TransType trans_type_from_code(unsigned code);
constexpr unsigned code_of(TransType t) { return static_cast<unsigned>(t); }
std::string_view to_string(TransType t);

// One AHB-side transfer presentation, as assembled by Mapper1.
struct AhbRequest {
  std::uint32_t haddr = 0;
  std::uint32_t hwdata = 0;
  TransType htrans = TransType::Idle;
  bool hwrite = false;
  bool hreadyin = false;
  // Read data supplied by the host (open-loop mode).
  std::uint32_t prdata = 0;

  friend bool operator==(const AhbRequest&, const AhbRequest&) = default;
};

// One cycle of APB-side outputs plus the AHB response signals.
struct ApbSnapshot {
  std::uint32_t paddr = 0;
  std::uint32_t pwdata = 0;
  std::uint8_t pselx = 0;  // 3 bits, zero or one-hot
  bool pwrite = false;
  bool penable = false;
  bool hreadyout = false;
  std::uint8_t hresp = 0;  // 2 bits
  std::uint32_t hrdata = 0;

  friend bool operator==(const ApbSnapshot&, const ApbSnapshot&) = default;
};

constexpr bool is_zero_or_one_hot(unsigned sel) { return sel < 8 && (sel & (sel - 1)) == 0; }

// Throws InvariantError when a snapshot breaks its field widths, the one-hot
// select rule or penable => pselx != 0.
void validate(const ApbSnapshot& snap);

// A bit-exact wire frame. Bit index N-1 is transmitted first.
template <std::size_t N>
class Frame {
 public:
  static constexpr std::size_t kWidth = N;
  // Both frame types travel as 26 lowercase hex digits.
  static constexpr std::size_t kHexDigits = 26;

  Frame() = default;
  explicit Frame(const std::bitset<N>& bits) : bits_(bits) {}

  // Bits in transmission order (index N-1 first).
  static Frame from_wire_bits(const std::vector<bool>& wire) {
    if (wire.size() != N) {
      throw FrameLengthError("expected " + std::to_string(N) + " bits, got " +
                             std::to_string(wire.size()));
    }
    Frame f;
    for (std::size_t k = 0; k < N; ++k) f.bits_[N - 1 - k] = wire[k];
    return f;
  }

  std::vector<bool> wire_bits() const {
    std::vector<bool> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = bits_[N - 1 - k];
    return out;
  }

  static Frame from_hex(std::string_view hex);
  std::string to_hex() const;

  bool bit(std::size_t i) const { return bits_.test(i); }
  void set_bit(std::size_t i, bool v) { bits_.set(i, v); }
  void flip(std::size_t i) { bits_.flip(i); }

  std::uint64_t field(std::size_t lsb, std::size_t width) const {
    std::uint64_t v = 0;
    for (std::size_t i = width; i-- > 0;) v = (v << 1) | (bits_[lsb + i] ? 1u : 0u);
    return v;
  }
  void set_field(std::size_t lsb, std::size_t width, std::uint64_t value) {
    for (std::size_t i = 0; i < width; ++i) bits_[lsb + i] = ((value >> i) & 1u) != 0;
  }

  const std::bitset<N>& bits() const { return bits_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::bitset<N> bits_;
};

using CommandFrame = Frame<100>;
using ResponseFrame = Frame<104>;

struct FieldSlice {
  std::string_view name;
  std::size_t lsb;
  std::size_t width;
};

// [99:68] prdata, [67:36] haddr, [35:4] hwdata, [3:2] htrans, [1] hreadyin, [0] hwrite
inline constexpr std::array<FieldSlice, 6> kCommandLayout{{
    {"prdata", 68, 32},
    {"haddr", 36, 32},
    {"hwdata", 4, 32},
    {"htrans", 2, 2},
    {"hreadyin", 1, 1},
    {"hwrite", 0, 1},
}};

// [103:72] hrdata, [71:40] paddr, [39:8] pwdata, [7:5] pselx, [4:3] hresp,
// [2] hreadyout, [1] pwrite, [0] penable
inline constexpr std::array<FieldSlice, 8> kResponseLayout{{
    {"hrdata", 72, 32},
    {"paddr", 40, 32},
    {"pwdata", 8, 32},
    {"pselx", 5, 3},
    {"hresp", 3, 2},
    {"hreadyout", 2, 1},
    {"pwrite", 1, 1},
    {"penable", 0, 1},
}};

CommandFrame encode_command(const AhbRequest& req);
AhbRequest decode_command(const CommandFrame& frame);
// Wire-order bit sequence; throws FrameLengthError unless exactly 100 bits.
AhbRequest decode_command(const std::vector<bool>& wire);

ResponseFrame encode_response(const ApbSnapshot& snap);
ApbSnapshot decode_response(const ResponseFrame& frame);
ApbSnapshot decode_response(const std::vector<bool>& wire);

namespace detail {
std::string bits_to_hex(const std::vector<bool>& msb_first, std::size_t digits);
// Returns bits MSB-first, 4 per digit. Throws ParseError on a bad digit.
std::vector<bool> hex_to_bits(std::string_view hex);
}  // namespace detail

template <std::size_t N>
Frame<N> Frame<N>::from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  const std::size_t min_digits = (N + 3) / 4;
  if (hex.size() < min_digits || hex.size() > kHexDigits) {
    throw FrameLengthError("expected " + std::to_string(min_digits) + ".." +
                           std::to_string(kHexDigits) + " hex digits for a " + std::to_string(N) +
                           "-bit frame, got " + std::to_string(hex.size()));
  }
  const std::vector<bool> msb_first = detail::hex_to_bits(hex);
  const std::size_t extra = msb_first.size() - N;
  for (std::size_t k = 0; k < extra; ++k) {
    if (msb_first[k]) throw FrameLengthError("hex value exceeds " + std::to_string(N) + " bits");
  }
  Frame f;
  for (std::size_t i = 0; i < N; ++i) f.bits_[i] = msb_first[msb_first.size() - 1 - i];
  return f;
}

template <std::size_t N>
std::string Frame<N>::to_hex() const {
  return detail::bits_to_hex(wire_bits(), kHexDigits);
}

}  // namespace ahb2apb
