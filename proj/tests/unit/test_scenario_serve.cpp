#include <gtest/gtest.h>

#include <boost/asio.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "ahb2apb/errors.hpp"
#include "ahb2apb/reference.hpp"
#include "ahb2apb/scenario.hpp"
#include "ahb2apb/serve.hpp"
#include "oracles.hpp"

using namespace ahb2apb;

TEST(ScenarioParse, FullDocument) {
  const Scenario s = parse_scenario(R"({
    "cycles": 500, "reset_cycles": 2, "sclk_divider": 4, "turnaround_cycles": 6,
    "response_mode": "closed_loop",
    "decode_map": [{"lo": "0x1000", "hi": "0x1fff", "select": 1}],
    "frames": ["0123456788c00000087654321b", {"data": "0123456788c00000087654321b", "gap": 9}],
    "ahb_transfers": ["0123456788c00000087654321b"],
    "peripherals": [{"select": 1, "registers": {"0x1000": "0xabc"}}]
  })");
  EXPECT_EQ(s.cycles, 500u);
  EXPECT_EQ(s.reset_cycles, 2u);
  EXPECT_EQ(s.sclk_divider, 4u);
  EXPECT_EQ(s.turnaround_cycles, 6u);
  EXPECT_EQ(s.mode, ResponseMode::ClosedLoop);
  ASSERT_EQ(s.map.entries().size(), 1u);
  EXPECT_EQ(s.map.entries()[0], (DecodeRange{0x1000, 0x1FFF, 1}));
  ASSERT_EQ(s.frames.size(), 2u);
  EXPECT_EQ(s.frames[0].gap, 4u);
  EXPECT_EQ(s.frames[1].gap, 9u);
  EXPECT_EQ(decode_command(s.frames[1].frame), reference::bringup_write_request());
  ASSERT_EQ(s.ahb_transfers.size(), 1u);
  EXPECT_EQ(s.ahb_transfers[0], reference::bringup_write_request());
  ASSERT_EQ(s.peripherals.size(), 1u);
  EXPECT_EQ(s.peripherals[0].registers.at(0x1000), 0xABCu);
}

TEST(ScenarioParse, DefaultsWhenEmpty) {
  const Scenario s = parse_scenario("{}");
  EXPECT_EQ(s.cycles, 1u);
  EXPECT_EQ(s.map, DecodeMap::default_map());
  EXPECT_EQ(s.mode, ResponseMode::OpenLoop);
  EXPECT_TRUE(s.frames.empty());
}

TEST(ScenarioParse, Errors) {
  EXPECT_THROW(parse_scenario("{"), ParseError);
  EXPECT_THROW(parse_scenario("[]"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"response_mode": "sideways"})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"frames": ["abc"]})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"frames": [42]})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"cycles": -3})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"cycles": 0})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"sclk_divider": 1})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"turnaround_cycles": 1})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"decode_map": [{"lo": 5, "hi": 1, "select": 0}]})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"peripherals": [{"select": 1, "file": "nope.txt"}]})"), ParseError);
}

TEST(ScenarioParse, PeripheralFileRelativeToScenario) {
  const auto dir = std::filesystem::temp_directory_path() / "ahb2apb_scenario_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "regs.txt") << "88000000 0000002a\n";
  std::ofstream(dir / "s.json") << R"({"peripherals": [{"select": 2, "file": "regs.txt"}]})";
  const Scenario s = load_scenario(dir / "s.json");
  ASSERT_EQ(s.peripherals.size(), 1u);
  EXPECT_EQ(s.peripherals[0].registers.at(0x88000000u), 42u);
  std::filesystem::remove_all(dir);
}

TEST(Golden, ParsesLinesAndComments) {
  const auto g = parse_golden("# expected\n" + std::string(26, 'f') + "\n\n" + std::string(26, '0') + " # zero\n");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_TRUE(g[0].bits().all());
  EXPECT_TRUE(g[1].bits().none());
  EXPECT_THROW(parse_golden("abc\n"), ParseError);
}

TEST(ServeSession, ReferenceFrame) {
  ServeSession session;
  const std::string hex = encode_command(reference::bringup_write_request()).to_hex();
  const std::string reply = session.handle_line("CMD " + hex);
  const RunResult batch = run(reference::single_frame_scenario(reference::bringup_write_request()), false);
  EXPECT_EQ(reply, "RSP " + batch.responses.at(0).to_hex() + "\n");
  EXPECT_EQ(session.frames_served(), 1u);
}

TEST(ServeSession, ErrorsKeepSessionAlive) {
  ServeSession session;
  EXPECT_EQ(session.handle_line("CMD 1234").rfind("ERR ", 0), 0u);
  EXPECT_EQ(session.handle_line("HELLO").rfind("ERR ", 0), 0u);
  EXPECT_EQ(session.handle_line("CMD " + std::string(25, 'q')).rfind("ERR ", 0), 0u);
  const std::string ok = session.handle_line("CMD " + std::string(26, '0') + "\r");
  EXPECT_EQ(ok.rfind("RSP ", 0), 0u);
  EXPECT_EQ(ok.size(), 4u + 26u + 1u);
  EXPECT_EQ(session.frames_served(), 1u);
}

TEST(ServeSession, MatchesBatchRun) {
  std::mt19937_64 rng(77);
  ServeSession session;
  Scenario batch;
  std::vector<std::string> replies;
  for (int i = 0; i < 100; ++i) {
    const CommandFrame f = encode_command(oracle::random_request(rng));
    batch.frames.push_back({f, ServeSession::kFrameGap});
    replies.push_back(session.handle_line("CMD " + f.to_hex()));
  }
  const RunResult r = run(batch, false);
  ASSERT_EQ(r.responses.size(), 100u);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(replies[i], "RSP " + r.responses[i].to_hex() + "\n") << i;
}

TEST(ServeTcp, RoundTripOverLoopback) {
  std::promise<std::uint16_t> bound;
  auto port_future = bound.get_future();
  ServeOptions opts;
  opts.max_sessions = 1;
  opts.on_listening = [&bound](std::uint16_t p) { bound.set_value(p); };
  std::ostringstream log;
  std::thread server([&] { serve_tcp(opts, log); });

  const std::uint16_t port = port_future.get();
  namespace asio = boost::asio;
  asio::io_context io;
  asio::ip::tcp::socket sock(io);
  sock.connect({asio::ip::address_v4::loopback(), port});
  const std::string hex = encode_command(reference::bringup_write_request()).to_hex();
  const std::string request = "CMD " + hex + "\nCMD bad\n";
  asio::write(sock, asio::buffer(request));
  asio::streambuf buf;
  std::istream in(&buf);
  std::string line1, line2;
  asio::read_until(sock, buf, '\n');
  std::getline(in, line1);
  asio::read_until(sock, buf, '\n');
  std::getline(in, line2);
  sock.close();
  server.join();

  const RunResult batch = run(reference::single_frame_scenario(reference::bringup_write_request()), false);
  EXPECT_EQ(line1, "RSP " + batch.responses.at(0).to_hex());
  EXPECT_EQ(line2.rfind("ERR ", 0), 0u);
  EXPECT_NE(log.str().find("closed after 1 frames"), std::string::npos);
}
