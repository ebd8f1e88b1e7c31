#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ahb2apb/engine.hpp"

namespace ahb2apb {

struct ScenarioFrame {
  CommandFrame frame;
  unsigned gap = 4;  // CSN-high cycles before this frame
};

struct Scenario {
  // Minimum cycles to simulate; the run continues until every frame has
  // produced its response.
  std::uint64_t cycles = 1;
  unsigned reset_cycles = 4;
  DecodeMap map = DecodeMap::default_map();
  ResponseMode mode = ResponseMode::OpenLoop;
  std::vector<ScenarioFrame> frames;
  unsigned sclk_divider = 2;
  unsigned turnaround_cycles = 8;
  // Presented straight onto the AHB side after reset, before any SPI frame.
  std::vector<AhbRequest> ahb_transfers;
  // Initial register contents for closed-loop peripherals.
  std::vector<ApbPeripheral> peripherals;
};

EngineConfig engine_config(const Scenario& s);

// Throws ConfigError if a duration is zero, the divider is below 2 or the
// turnaround is too short.
void validate(const Scenario& s);

/* JSON form:
 *   {
 *     "cycles": 2000, "reset_cycles": 4, "sclk_divider": 2, "turnaround_cycles": 8,
 *     "response_mode": "open_loop" | "closed_loop",
 *     "decode_map": [{"lo": "0x80000000", "hi": "0x83ffffff", "select": 0}, ...],
 *     "frames": ["<26 hex digits>", {"data": "<hex>", "gap": 10}, ...],
 *     "ahb_transfers": ["<hex command frame>", ...],
 *     "peripherals": [{"select": 2, "file": "regs.txt"} | {"select": 0, "registers": {"0x80000000": "0x1"}}]
 *   }
 * Every key is optional. Relative peripheral file paths resolve against base_dir.
 * Throws ParseError on malformed input and ConfigError on invalid values.
 */
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

struct RunResult {
  Trace trace;
  std::vector<ResponseFrame> responses;
  std::vector<Violation> violations;
  std::array<ApbPeripheral, 3> peripherals;
  std::uint64_t cycles = 0;
};

// Deterministic: the same scenario always yields the same trace and responses.
RunResult run(const Scenario& scenario, bool record_trace = true);

// Golden files: one response frame per line as hex, '#' comments allowed.
std::vector<ResponseFrame> parse_golden(std::string_view text);

}  // namespace ahb2apb
