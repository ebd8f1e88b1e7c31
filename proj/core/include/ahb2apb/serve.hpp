#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "ahb2apb/engine.hpp"

namespace ahb2apb {

// Line protocol spoken over the TCP transport:
//   client: "CMD <26 hex digits>\n"
//   server: "RSP <26 hex digits>\n" or "ERR <message>\n"
// One engine per session, so a session replays exactly like a batch run of
// the same frames.
class ServeSession {
 public:
  static constexpr unsigned kFrameGap = 4;

  explicit ServeSession(EngineConfig cfg = {});

  // Handles one request line (without the trailing newline) and returns the
  // reply line including its newline.
  std::string handle_line(std::string_view line);

  std::size_t frames_served() const { return served_; }
  const Engine& engine() const { return engine_; }

 private:
  Engine engine_;
  std::size_t served_ = 0;
};

struct ServeOptions {
  std::uint16_t port = 0;  // 0 picks an ephemeral port
  EngineConfig config;
  // Stop after this many client sessions; unlimited when empty.
  std::optional<std::size_t> max_sessions;
  // Called with the bound port once the listener is up.
  std::function<void(std::uint16_t)> on_listening;
};

// Accepts clients one at a time on 127.0.0.1 and answers them with a fresh
// ServeSession each. A dropped connection ends that session only.
void serve_tcp(const ServeOptions& opts, std::ostream& log);

}  // namespace ahb2apb
