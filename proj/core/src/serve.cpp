#include "ahb2apb/serve.hpp"

#include <istream>
#include <ostream>

#include <boost/asio.hpp>

namespace ahb2apb {

namespace asio = boost::asio;
using asio::ip::tcp;

ServeSession::ServeSession(EngineConfig cfg) : engine_([&cfg] {
  cfg.record_trace = false;
  return cfg;
}()) {}

std::string ServeSession::handle_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  if (line.size() < 4 || line.substr(0, 4) != "CMD ") return "ERR expected 'CMD <hex>'\n";

  CommandFrame frame;
  try {
    frame = CommandFrame::from_hex(line.substr(4));
  } catch (const std::exception& e) {
    return std::string("ERR ") + e.what() + "\n";
  }

  const std::size_t before = engine_.responses().size();
  engine_.queue_frame(frame, kFrameGap);
  const std::uint64_t budget = 4 * (SpiSlaveState::kCommandBits + SpiSlaveState::kResponseBits) *
                                   engine_.config().sclk_divider +
                               engine_.config().turnaround_cycles + engine_.config().reset_cycles;
  if (!engine_.run_until_idle(budget) || engine_.responses().size() != before + 1) {
    return "ERR simulation did not produce a response\n";
  }
  ++served_;
  return "RSP " + engine_.responses().back().to_hex() + "\n";
}

void serve_tcp(const ServeOptions& opts, std::ostream& log) {
  asio::io_context io;
  tcp::acceptor acceptor(io, tcp::endpoint(asio::ip::address_v4::loopback(), opts.port));
  const auto port = acceptor.local_endpoint().port();
  log << "listening on 127.0.0.1:" << port << std::endl;
  if (opts.on_listening) opts.on_listening(port);

  for (std::size_t n = 0; !opts.max_sessions || n < *opts.max_sessions; ++n) {
    tcp::socket sock(io);
    acceptor.accept(sock);
    log << "session " << n << ": client connected" << std::endl;
    ServeSession session(opts.config);
    asio::streambuf buf;
    boost::system::error_code ec;
    for (;;) {
      asio::read_until(sock, buf, '\n', ec);
      if (ec) break;
      std::istream in(&buf);
      std::string line;
      std::getline(in, line);
      const std::string reply = session.handle_line(line);
      asio::write(sock, asio::buffer(reply), ec);
      if (ec) break;
    }
    log << "session " << n << ": closed after " << session.frames_served() << " frames" << std::endl;
  }
}

}  // namespace ahb2apb
