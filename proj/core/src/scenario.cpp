#include "ahb2apb/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ahb2apb {

using nlohmann::json;

EngineConfig engine_config(const Scenario& s) {
  EngineConfig cfg;
  cfg.map = s.map;
  cfg.mode = s.mode;
  cfg.reset_cycles = s.reset_cycles;
  cfg.sclk_divider = s.sclk_divider;
  cfg.turnaround_cycles = s.turnaround_cycles;
  return cfg;
}

void validate(const Scenario& s) {
  if (s.cycles == 0) throw ConfigError("cycles must be positive");
  validate(engine_config(s));
  for (const auto& p : s.peripherals) {
    if (p.select > 2) throw ConfigError("peripheral select must be 0..2");
    for (const auto& [addr, value] : p.registers) {
      if (addr & 0x3u) throw ConfigError("peripheral register offsets must be word aligned");
    }
  }
}

namespace {

std::uint32_t word_from(const json& j, const char* what) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > 0xFFFF'FFFFu) throw ParseError(std::string(what) + " exceeds 32 bits");
    return static_cast<std::uint32_t>(v);
  }
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a hex string or integer");
  std::string text = j.get<std::string>();
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 16);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": bad hex '" + text + "'");
  }
  if (used != text.size() || v > 0xFFFF'FFFFull) {
    throw ParseError(std::string(what) + ": bad hex '" + text + "'");
  }
  return static_cast<std::uint32_t>(v);
}

unsigned count_from(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<unsigned>();
}

ScenarioFrame frame_from(const json& j) {
  ScenarioFrame f;
  if (j.is_string()) {
    f.frame = CommandFrame::from_hex(j.get<std::string>());
  } else if (j.is_object()) {
    if (!j.contains("data")) throw ParseError("frame object needs \"data\"");
    f.frame = CommandFrame::from_hex(j.at("data").get<std::string>());
    if (j.contains("gap")) f.gap = count_from(j.at("gap"), "gap");
  } else {
    throw ParseError("frame must be a hex string or an object");
  }
  return f;
}

ApbPeripheral peripheral_from(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("select")) throw ParseError("peripheral needs \"select\"");
  const unsigned select = count_from(j.at("select"), "select");
  ApbPeripheral p;
  if (j.contains("file")) {
    std::filesystem::path path = j.at("file").get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open register file " + path.string());
    p = load_peripheral(in, select);
  }
  p.select = select;
  if (j.contains("registers")) {
    for (const auto& [addr, value] : j.at("registers").items()) {
      p.registers[word_from(json(addr), "register address")] = word_from(value, "register value");
    }
  }
  return p;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");

  Scenario s;
  try {
    if (doc.contains("cycles")) {
      const json& c = doc.at("cycles");
      if (!c.is_number_unsigned()) throw ParseError("cycles must be a non-negative integer");
      s.cycles = c.get<std::uint64_t>();
    }
    if (doc.contains("reset_cycles")) s.reset_cycles = count_from(doc.at("reset_cycles"), "reset_cycles");
    if (doc.contains("sclk_divider")) s.sclk_divider = count_from(doc.at("sclk_divider"), "sclk_divider");
    if (doc.contains("turnaround_cycles")) {
      s.turnaround_cycles = count_from(doc.at("turnaround_cycles"), "turnaround_cycles");
    }
    if (doc.contains("response_mode")) {
      const auto mode = doc.at("response_mode").get<std::string>();
      if (mode == "open_loop") {
        s.mode = ResponseMode::OpenLoop;
      } else if (mode == "closed_loop") {
        s.mode = ResponseMode::ClosedLoop;
      } else {
        throw ParseError("response_mode must be open_loop or closed_loop");
      }
    }
    if (doc.contains("decode_map")) {
      std::vector<DecodeRange> ranges;
      for (const auto& e : doc.at("decode_map")) {
        ranges.push_back({word_from(e.at("lo"), "lo"), word_from(e.at("hi"), "hi"),
                          count_from(e.at("select"), "select")});
      }
      s.map = DecodeMap(std::move(ranges));
    }
    if (doc.contains("frames")) {
      for (const auto& f : doc.at("frames")) s.frames.push_back(frame_from(f));
    }
    if (doc.contains("ahb_transfers")) {
      for (const auto& f : doc.at("ahb_transfers")) {
        s.ahb_transfers.push_back(decode_command(frame_from(f).frame));
      }
    }
    if (doc.contains("peripherals")) {
      for (const auto& p : doc.at("peripherals")) s.peripherals.push_back(peripheral_from(p, base_dir));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  } catch (const FrameLengthError& e) {
    throw ParseError(std::string("scenario frame: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path());
}

RunResult run(const Scenario& scenario, bool record_trace) {
  validate(scenario);
  EngineConfig cfg = engine_config(scenario);
  cfg.record_trace = record_trace;
  Engine engine(cfg);
  for (const auto& p : scenario.peripherals) {
    engine.bridge().peripheral(p.select).registers = p.registers;
  }
  engine.queue_ahb(scenario.ahb_transfers);
  for (const auto& f : scenario.frames) engine.queue_frame(f.frame, f.gap);

  // Generous bound: every frame fits in well under this many cycles.
  const std::uint64_t per_frame =
      (SpiSlaveState::kCommandBits + SpiSlaveState::kResponseBits + 8) * scenario.sclk_divider +
      scenario.turnaround_cycles + 64;
  std::uint64_t budget = scenario.reset_cycles + 64 + 8 * scenario.ahb_transfers.size();
  for (const auto& f : scenario.frames) budget += per_frame + f.gap;
  if (!engine.run_until_idle(budget)) throw ConfigError("scenario did not settle");
  while (engine.cycle() < scenario.cycles) engine.step();

  RunResult r;
  r.responses = engine.responses();
  r.violations = engine.violations();
  for (unsigned i = 0; i < 3; ++i) r.peripherals[i] = engine.bridge().peripheral(i);
  r.cycles = engine.cycle();
  r.trace = engine.trace();
  return r;
}

std::vector<ResponseFrame> parse_golden(std::string_view text) {
  std::vector<ResponseFrame> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    try {
      out.push_back(ResponseFrame::from_hex(tok));
    } catch (const FrameLengthError& e) {
      throw ParseError(std::string("golden file: ") + e.what());
    }
  }
  return out;
}

}  // namespace ahb2apb
