#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ahb2apb/bus_types.hpp"
#include "ahb2apb/errors.hpp"
#include "ahb2apb/reference.hpp"
#include "oracles.hpp"

using namespace ahb2apb;

TEST(TransType, CodesRoundTrip) {
  for (unsigned c = 0; c < 4; ++c) EXPECT_EQ(code_of(trans_type_from_code(c)), c);
  EXPECT_EQ(to_string(TransType::NonSeq), "NONSEQ");
  EXPECT_THROW(trans_type_from_code(4), InvariantError);
}

TEST(CommandCodec, ZeroFrame) {
  const AhbRequest zero;
  const CommandFrame f = encode_command(zero);
  EXPECT_TRUE(f.bits().none());
  EXPECT_EQ(f.to_hex(), std::string(26, '0'));
  EXPECT_EQ(decode_command(f), zero);
}

TEST(CommandCodec, ReferenceRequestMatchesOracle) {
  const AhbRequest r = reference::bringup_write_request();
  const CommandFrame f = encode_command(r);
  EXPECT_EQ(f.wire_bits(), oracle::command_wire(r));
  EXPECT_EQ(f.field(68, 32), 0x12345678u);
  EXPECT_EQ(f.field(36, 32), 0x8C000000u);
  EXPECT_EQ(f.field(4, 32), 0x87654321u);
  EXPECT_EQ(f.field(2, 2), 2u);
  EXPECT_TRUE(f.bit(1));
  EXPECT_TRUE(f.bit(0));
  EXPECT_EQ(decode_command(f), r);
}

TEST(CommandCodec, HexIsLowercase26DigitsMsbFirst) {
  // 100 bits: 0x12345678 | 0x8c000000 | 0x87654321 | 10 1 1
  const std::string hex = encode_command(reference::bringup_write_request()).to_hex();
  EXPECT_EQ(hex, "0123456788c00000087654321b");
  EXPECT_EQ(CommandFrame::from_hex(hex), encode_command(reference::bringup_write_request()));
  EXPECT_EQ(CommandFrame::from_hex("0x" + hex), CommandFrame::from_hex(hex));
  EXPECT_EQ(CommandFrame::from_hex(hex.substr(1)), CommandFrame::from_hex(hex));
}

TEST(CommandCodec, RandomRoundTripAgainstOracle) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    const AhbRequest r = oracle::random_request(rng);
    const CommandFrame f = encode_command(r);
    ASSERT_EQ(f.wire_bits(), oracle::command_wire(r));
    ASSERT_EQ(decode_command(f), r);
    const std::vector<bool> w = oracle::random_wire(rng, 100);
    ASSERT_EQ(decode_command(w), oracle::command_fields(w));
    ASSERT_EQ(encode_command(decode_command(w)).wire_bits(), w);
  }
}

TEST(CommandCodec, WrongLengthThrows) {
  EXPECT_THROW(decode_command(std::vector<bool>(99)), FrameLengthError);
  EXPECT_THROW(decode_command(std::vector<bool>(101)), FrameLengthError);
  EXPECT_THROW(decode_command(std::vector<bool>{}), FrameLengthError);
  EXPECT_THROW(CommandFrame::from_hex(std::string(24, '0')), FrameLengthError);
  EXPECT_THROW(CommandFrame::from_hex(std::string(27, '0')), FrameLengthError);
  // 26 digits carry 104 bits; the top four must be clear for a command.
  EXPECT_THROW(CommandFrame::from_hex("1" + std::string(25, '0')), FrameLengthError);
  EXPECT_THROW(CommandFrame::from_hex(std::string(25, 'g')), ParseError);
}

TEST(ResponseCodec, ZeroAndAllOnes) {
  EXPECT_EQ(encode_response(ApbSnapshot{}).to_hex(), std::string(26, '0'));
  ResponseFrame ones;
  for (std::size_t i = 0; i < 104; ++i) ones.set_bit(i, true);
  EXPECT_EQ(ones.to_hex(), std::string(26, 'f'));
  const ApbSnapshot s = decode_response(ones);
  EXPECT_EQ(s.hrdata, 0xFFFFFFFFu);
  EXPECT_EQ(s.pselx, 7);
  EXPECT_EQ(s.hresp, 3);
}

TEST(ResponseCodec, RandomRoundTripAgainstOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const ApbSnapshot s = oracle::random_snapshot(rng);
    const ResponseFrame f = encode_response(s);
    ASSERT_EQ(f.wire_bits(), oracle::response_wire(s));
    ASSERT_EQ(decode_response(f), s);
    const std::vector<bool> w = oracle::random_wire(rng, 104);
    ASSERT_EQ(decode_response(w), oracle::response_fields(w));
  }
}

TEST(ResponseCodec, RejectsInvalidSnapshots) {
  ApbSnapshot s;
  s.pselx = 0b011;
  EXPECT_THROW(encode_response(s), InvariantError);
  s.pselx = 0b1000;
  EXPECT_THROW(encode_response(s), InvariantError);
  s = {};
  s.hresp = 4;
  EXPECT_THROW(encode_response(s), InvariantError);
  s = {};
  s.penable = true;
  EXPECT_THROW(encode_response(s), InvariantError);
  EXPECT_THROW(decode_response(std::vector<bool>(100)), FrameLengthError);
}

TEST(Layout, CommandFieldsTileTheFrame) {
  std::set<std::size_t> covered;
  std::size_t total = 0;
  for (const auto& f : kCommandLayout) {
    total += f.width;
    for (std::size_t i = 0; i < f.width; ++i) EXPECT_TRUE(covered.insert(f.lsb + i).second);
  }
  EXPECT_EQ(total, 100u);
  EXPECT_EQ(covered.size(), 100u);
  EXPECT_EQ(*covered.rbegin(), 99u);
}

TEST(Layout, ResponseFieldsTileTheFrame) {
  std::set<std::size_t> covered;
  for (const auto& f : kResponseLayout) {
    for (std::size_t i = 0; i < f.width; ++i) EXPECT_TRUE(covered.insert(f.lsb + i).second);
  }
  EXPECT_EQ(covered.size(), 104u);
  EXPECT_EQ(*covered.rbegin(), 103u);
}

namespace {

int changed_fields(const AhbRequest& a, const AhbRequest& b) {
  return (a.prdata != b.prdata) + (a.haddr != b.haddr) + (a.hwdata != b.hwdata) +
         (a.htrans != b.htrans) + (a.hreadyin != b.hreadyin) + (a.hwrite != b.hwrite);
}

int changed_fields(const ApbSnapshot& a, const ApbSnapshot& b) {
  return (a.hrdata != b.hrdata) + (a.paddr != b.paddr) + (a.pwdata != b.pwdata) +
         (a.pselx != b.pselx) + (a.hresp != b.hresp) + (a.hreadyout != b.hreadyout) +
         (a.pwrite != b.pwrite) + (a.penable != b.penable);
}

}  // namespace

TEST(Layout, SingleBitFlipChangesOneField) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    const CommandFrame cf = CommandFrame::from_wire_bits(oracle::random_wire(rng, 100));
    for (std::size_t i = 0; i < 100; ++i) {
      CommandFrame g = cf;
      g.flip(i);
      ASSERT_EQ(changed_fields(decode_command(cf), decode_command(g)), 1) << "bit " << i;
    }
    const ResponseFrame rf = ResponseFrame::from_wire_bits(oracle::random_wire(rng, 104));
    for (std::size_t i = 0; i < 104; ++i) {
      ResponseFrame g = rf;
      g.flip(i);
      ASSERT_EQ(changed_fields(decode_response(rf), decode_response(g)), 1) << "bit " << i;
    }
  }
}

TEST(Frame, WireOrderIsMsbFirst) {
  std::vector<bool> w(100, false);
  w[0] = true;
  const CommandFrame f = CommandFrame::from_wire_bits(w);
  EXPECT_TRUE(f.bit(99));
  EXPECT_EQ(f.to_hex(), "08" + std::string(24, '0'));
  EXPECT_EQ(decode_command(f).prdata, 0x80000000u);
}

TEST(SnapshotValidate, AcceptsLegalAndRejectsIllegal) {
  EXPECT_TRUE(is_zero_or_one_hot(0));
  EXPECT_TRUE(is_zero_or_one_hot(4));
  EXPECT_FALSE(is_zero_or_one_hot(6));
  EXPECT_FALSE(is_zero_or_one_hot(8));
  ApbSnapshot s;
  s.pselx = 2;
  s.penable = true;
  EXPECT_NO_THROW(validate(s));
}
