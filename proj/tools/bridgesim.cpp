// bridgesim: command-line front end for the AHB-to-APB bridge simulator.
//
// Exit codes: 0 ok, 1 golden/reproduction mismatch, 2 bad input,
// 3 protocol-monitor violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahb2apb/apb_fsm.hpp"
#include "ahb2apb/reference.hpp"
#include "ahb2apb/scenario.hpp"
#include "ahb2apb/serve.hpp"

namespace {

using namespace ahb2apb;
using nlohmann::json;

constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitViolation = 3;

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08x", v);
  return buf;
}

std::string bin(unsigned v, int width) {
  std::string s = "0b";
  for (int i = width - 1; i >= 0; --i) s += ((v >> i) & 1u) ? '1' : '0';
  return s;
}

std::string describe(const ApbSnapshot& s) {
  std::ostringstream os;
  os << "Hrdata=" << hex32(s.hrdata) << " Paddr=" << hex32(s.paddr) << " Pwdata=" << hex32(s.pwdata)
     << " Pselx=" << bin(s.pselx, 3) << " Hresp=" << bin(s.hresp, 2) << " Hreadyout=" << s.hreadyout
     << " Pwrite=" << s.pwrite << " Penable=" << s.penable;
  return os.str();
}

json snapshot_json(const ApbSnapshot& s) {
  return json{{"hrdata", hex32(s.hrdata)}, {"paddr", hex32(s.paddr)},   {"pwdata", hex32(s.pwdata)},
              {"pselx", s.pselx},          {"hresp", s.hresp},          {"hreadyout", int(s.hreadyout)},
              {"pwrite", int(s.pwrite)},   {"penable", int(s.penable)}};
}

json request_json(const AhbRequest& r) {
  return json{{"prdata", hex32(r.prdata)}, {"haddr", hex32(r.haddr)},   {"hwdata", hex32(r.hwdata)},
              {"htrans", code_of(r.htrans)}, {"hreadyin", int(r.hreadyin)}, {"hwrite", int(r.hwrite)}};
}

std::uint64_t number_field(const json& j, const char* name, std::uint64_t max) {
  if (!j.contains(name)) return 0;
  const json& v = j.at(name);
  std::uint64_t out = 0;
  if (v.is_number_unsigned()) {
    out = v.get<std::uint64_t>();
  } else if (v.is_boolean()) {
    out = v.get<bool>() ? 1 : 0;
  } else if (v.is_string()) {
    std::string t = v.get<std::string>();
    int base = 10;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) {
      base = 16;
      t = t.substr(2);
    } else if (t.rfind("0b", 0) == 0) {
      base = 2;
      t = t.substr(2);
    }
    std::size_t used = 0;
    out = std::stoull(t, &used, base);
    if (used != t.size()) throw ParseError(std::string("bad number for ") + name);
  } else {
    throw ParseError(std::string("bad value for ") + name);
  }
  if (out > max) throw ParseError(std::string(name) + " out of range");
  return out;
}

AhbRequest request_from_json(const json& j) {
  static const std::set<std::string> kKeys{"prdata", "haddr", "hwdata", "htrans", "hreadyin", "hwrite"};
  if (!j.is_object()) throw ParseError("request fields must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ParseError("unknown request field '" + key + "'");
  }
  AhbRequest r;
  r.prdata = static_cast<std::uint32_t>(number_field(j, "prdata", 0xFFFF'FFFFu));
  r.haddr = static_cast<std::uint32_t>(number_field(j, "haddr", 0xFFFF'FFFFu));
  r.hwdata = static_cast<std::uint32_t>(number_field(j, "hwdata", 0xFFFF'FFFFu));
  r.htrans = trans_type_from_code(static_cast<unsigned>(number_field(j, "htrans", 3)));
  r.hreadyin = number_field(j, "hreadyin", 1) != 0;
  r.hwrite = number_field(j, "hwrite", 1) != 0;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunOptions {
  std::string scenario;
  std::string vcd;
  std::string csv;
  std::string golden;
  std::string dump_dir;
};

int cmd_run(const RunOptions& o) {
  Scenario scenario;
  std::vector<ResponseFrame> golden;
  try {
    scenario = load_scenario(o.scenario);
    if (!o.golden.empty()) golden = parse_golden(slurp(o.golden));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  const RunResult result = run(scenario, !o.vcd.empty() || !o.csv.empty());
  if (!o.vcd.empty()) {
    std::ofstream out(o.vcd);
    write_vcd(out, result.trace);
  }
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    write_csv(out, result.trace);
  }
  if (!o.dump_dir.empty()) {
    std::filesystem::create_directories(o.dump_dir);
    for (const auto& p : result.peripherals) {
      std::ofstream out(std::filesystem::path(o.dump_dir) / ("psel" + std::to_string(p.select) + ".txt"));
      dump_peripheral(out, p);
    }
  }

  std::cout << "cycles: " << result.cycles << '\n';
  for (std::size_t i = 0; i < result.responses.size(); ++i) {
    const auto& rsp = result.responses[i];
    std::cout << "frame " << i << ": " << describe(decode_response(rsp)) << " rsp=" << rsp.to_hex() << '\n';
  }

  if (!result.violations.empty()) {
    for (const auto& v : result.violations) {
      std::cerr << "violation at cycle " << v.cycle << ": " << to_string(v.rule) << " (" << v.detail << ")\n";
    }
    return kExitViolation;
  }

  if (!o.golden.empty()) {
    bool ok = golden.size() == result.responses.size();
    if (!ok) {
      std::cerr << "golden has " << golden.size() << " frames, run produced " << result.responses.size() << '\n';
    }
    for (std::size_t i = 0; i < std::min(golden.size(), result.responses.size()); ++i) {
      if (golden[i] != result.responses[i]) {
        ok = false;
        std::cerr << "frame " << i << " mismatch: expected " << golden[i].to_hex() << " got "
                  << result.responses[i].to_hex() << '\n';
      }
    }
    std::cout << "golden: " << (ok ? "match" : "MISMATCH") << '\n';
    if (!ok) return kExitMismatch;
  }
  return 0;
}

int cmd_random(std::uint64_t seed, std::size_t frames, unsigned divider) {
  std::mt19937_64 rng(seed);
  Scenario s;
  s.sclk_divider = divider;
  for (std::size_t i = 0; i < frames; ++i) {
    AhbRequest r;
    r.prdata = static_cast<std::uint32_t>(rng());
    r.haddr = (rng() & 1) ? 0x8000'0000u | static_cast<std::uint32_t>(rng() & 0x0FFF'FFFCu)
                          : static_cast<std::uint32_t>(rng());
    r.hwdata = static_cast<std::uint32_t>(rng());
    r.htrans = static_cast<TransType>(rng() & 3);
    r.hreadyin = (rng() & 7) != 0;
    r.hwrite = rng() & 1;
    s.frames.push_back({encode_command(r), static_cast<unsigned>(1 + rng() % 8)});
  }
  const RunResult result = run(s, false);
  std::cout << "frames: " << frames << " responses: " << result.responses.size() << " cycles: " << result.cycles
            << " violations: " << result.violations.size() << '\n';
  for (const auto& v : result.violations) {
    std::cerr << "violation at cycle " << v.cycle << ": " << to_string(v.rule) << '\n';
  }
  if (!result.violations.empty()) return kExitViolation;
  return result.responses.size() == frames ? 0 : kExitMismatch;
}

int cmd_reproduce() {
  int failures = 0;
  const auto line = [&failures](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  {
    const RunResult r = run(reference::single_frame_scenario(reference::bringup_write_request()), false);
    const bool one = r.responses.size() == 1;
    const ApbSnapshot s = one ? decode_response(r.responses[0]) : ApbSnapshot{};
    std::cout << "bring-up write response: " << describe(s) << '\n';
    line(one && s.hrdata == 0x1234'5678u && s.paddr == 0x8C00'0000u && s.pwdata == 0x8765'4321u && s.pwrite &&
             s.penable && s.hreadyout,
         "bring-up write reproduces Hrdata/Paddr/Pwdata/Pwrite/Penable/Hreadyout");
  }
  {
    const RunResult r = run(reference::single_frame_scenario(reference::seq_write_request()), true);
    std::uint64_t high = 0, at = 0;
    for (std::uint64_t c = 0; c < r.trace.cycle_count(); ++c) {
      if (r.trace.u64_at("Penableout", c)) {
        ++high;
        at = c;
      }
    }
    const bool ok = high == 1 && r.trace.u64_at("Paddrout", at) == 0x8000'000Cu &&
                    r.trace.u64_at("Pwriteout", at) == 1 && r.trace.u64_at("Pselxout", at) == 0b001 &&
                    r.trace.u64_at("Hresp", at) == 0 && r.violations.empty();
    line(ok, "bridge write waveform: Paddrout=0x8000000c, Pwriteout=1, one-cycle Penableout, Pselxout=0b001");
  }
  return failures == 0 ? 0 : kExitMismatch;
}

int cmd_encode_fields(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.is_array()) {
    for (const auto& item : doc) std::cout << encode_command(request_from_json(item)).to_hex() << '\n';
  } else {
    std::cout << encode_command(request_from_json(doc)).to_hex() << '\n';
  }
  return 0;
}

// One frame per non-blank input line, in order.
int cmd_encode_batch(const std::string& path) {
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw ParseError("cannot open " + path);
  }
  std::istream& in = path == "-" ? std::cin : file;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::cout << encode_command(request_from_json(json::parse(line))).to_hex() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate AHB-to-APB bridge simulator with SPI host link"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario file");
  run_cmd->add_option("--scenario", run_opts.scenario, "Scenario JSON")->required();
  run_cmd->add_option("--vcd", run_opts.vcd, "Write the trace as VCD");
  run_cmd->add_option("--csv", run_opts.csv, "Write the trace as CSV");
  run_cmd->add_option("--golden", run_opts.golden, "Compare responses with golden hex frames");
  run_cmd->add_option("--dump-peripherals", run_opts.dump_dir, "Write peripheral register files here");

  std::uint16_t port = 0;
  std::size_t sessions = 0;
  std::string mode = "open_loop";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the CMD/RSP line protocol over TCP");
  serve_cmd->add_option("--serve,--port", port, "TCP port on 127.0.0.1 (0 = ephemeral)")->required();
  serve_cmd->add_option("--sessions", sessions, "Exit after this many client sessions");
  serve_cmd->add_option("--response-mode", mode, "open_loop or closed_loop")
      ->check(CLI::IsMember({"open_loop", "closed_loop"}));

  std::string format = "dot";
  auto* fsm_cmd = app.add_subcommand("fsm-export", "Print the APB FSM transition graph");
  fsm_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot"}));

  std::uint64_t seed = 1;
  std::size_t frames = 1000;
  unsigned divider = 2;
  auto* random_cmd = app.add_subcommand("random", "Push seeded random frames through the protocol monitor");
  random_cmd->add_option("--seed", seed, "RNG seed");
  random_cmd->add_option("--frames", frames, "Number of frames");
  random_cmd->add_option("--divider", divider, "sclk divider")->check(CLI::Range(2u, 64u));

  auto* repro_cmd = app.add_subcommand("reproduce", "Run the built-in reference scenarios");

  std::string fields, batch;
  auto* encode_cmd = app.add_subcommand("encode", "Encode AHB request fields as 100-bit command frames");
  auto* fields_opt =
      encode_cmd->add_option("--fields", fields, "JSON object of request fields, or an array of them");
  auto* batch_opt = encode_cmd->add_option("--batch", batch, "JSON Lines file of field sets ('-' for stdin)");
  fields_opt->excludes(batch_opt);
  encode_cmd->require_option(1);

  std::string cmd_hex, rsp_hex;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a command or response frame to JSON");
  auto* cmd_opt = decode_cmd->add_option("--command", cmd_hex, "100-bit command frame (hex)");
  auto* rsp_opt = decode_cmd->add_option("--response", rsp_hex, "104-bit response frame (hex)");
  cmd_opt->excludes(rsp_opt);
  decode_cmd->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts);
    if (*serve_cmd) {
      ServeOptions opts;
      opts.port = port;
      opts.config.mode = mode == "closed_loop" ? ResponseMode::ClosedLoop : ResponseMode::OpenLoop;
      if (sessions > 0) opts.max_sessions = sessions;
      serve_tcp(opts, std::cerr);
      return 0;
    }
    if (*fsm_cmd) {
      std::cout << fsm_to_dot();
      return 0;
    }
    if (*random_cmd) return cmd_random(seed, frames, divider);
    if (*repro_cmd) return cmd_reproduce();
    if (*encode_cmd) return batch.empty() ? cmd_encode_fields(fields) : cmd_encode_batch(batch);
    if (*decode_cmd) {
      if (!cmd_hex.empty()) {
        std::cout << request_json(decode_command(CommandFrame::from_hex(cmd_hex))).dump() << '\n';
      } else {
        std::cout << snapshot_json(decode_response(ResponseFrame::from_hex(rsp_hex))).dump() << '\n';
      }
      return 0;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
