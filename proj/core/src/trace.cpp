#include "ahb2apb/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ahb2apb {

Trace::SignalId Trace::declare(std::string name, unsigned width) {
  if (width == 0 || width > kMaxSignalWidth) {
    throw std::invalid_argument("signal width must be 1..128: " + name);
  }
  if (index_.count(name) != 0) throw std::invalid_argument("duplicate signal: " + name);
  const SignalId id = signals_.size();
  index_.emplace(name, id);
  signals_.push_back(Signal{std::move(name), width, {}});
  return id;
}

void Trace::record(SignalId id, std::uint64_t cycle, const SignalValue& value) {
  Signal& s = signals_.at(id);
  if (s.width < kMaxSignalWidth && (value >> s.width).any()) {
    throw std::invalid_argument("value wider than signal " + s.name);
  }
  if (!s.changes.empty()) {
    const SignalChange& last = s.changes.back();
    if (cycle < last.cycle) throw std::invalid_argument("trace cycle went backwards on " + s.name);
    if (last.value == value) return;
    if (cycle == last.cycle) {
      s.changes.back().value = value;
      return;
    }
  }
  s.changes.push_back({cycle, value});
  cycle_count_ = std::max(cycle_count_, cycle + 1);
}

std::optional<Trace::SignalId> Trace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Signal& Trace::signal(std::string_view name) const {
  auto id = find(name);
  if (!id) throw std::out_of_range("no signal named " + std::string(name));
  return signals_[*id];
}

SignalValue Trace::value_at(SignalId id, std::uint64_t cycle) const {
  const auto& ch = signals_.at(id).changes;
  auto it = std::upper_bound(ch.begin(), ch.end(), cycle,
                             [](std::uint64_t c, const SignalChange& sc) { return c < sc.cycle; });
  if (it == ch.begin()) return {};
  return std::prev(it)->value;
}

std::uint64_t Trace::u64_at(std::string_view name, std::uint64_t cycle) const {
  auto id = find(name);
  if (!id) throw std::out_of_range("no signal named " + std::string(name));
  return to_u64(value_at(*id, cycle));
}

std::size_t Trace::changes_after(std::uint64_t cycle) const {
  std::size_t n = 0;
  for (const auto& s : signals_) {
    n += static_cast<std::size_t>(std::count_if(s.changes.begin(), s.changes.end(),
                                                [cycle](const SignalChange& c) { return c.cycle > cycle; }));
  }
  return n;
}

std::string to_hex(const SignalValue& v, unsigned width) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const unsigned digits = (width + 3) / 4;
  std::string out(digits, '0');
  for (unsigned d = 0; d < digits; ++d) {
    unsigned nib = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const unsigned bit = d * 4 + b;
      if (bit < width && v.test(bit)) nib |= 1u << b;
    }
    out[digits - 1 - d] = kDigits[nib];
  }
  return out;
}

std::string to_binary(const SignalValue& v, unsigned width) {
  std::string out(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if (v.test(i)) out[width - 1 - i] = '1';
  }
  return out;
}

std::uint64_t to_u64(const SignalValue& v) {
  return (v & SignalValue(~std::uint64_t{0})).to_ullong();
}

namespace {

std::string vcd_identifier(std::size_t n) {
  std::string id;
  do {
    id.push_back(static_cast<char>('!' + n % 94));
    n /= 94;
  } while (n != 0);
  return id;
}

void write_value(std::ostream& out, const Signal& s, const SignalValue& v, const std::string& id) {
  if (s.width == 1) {
    out << (v.test(0) ? '1' : '0') << id << '\n';
    return;
  }
  std::string bits = to_binary(v, s.width);
  const auto first_one = bits.find('1');
  bits = first_one == std::string::npos ? "0" : bits.substr(first_one);
  out << 'b' << bits << ' ' << id << '\n';
}

}  // namespace

void write_vcd(std::ostream& out, const Trace& trace) {
  out << "$version ahb2apb-sim $end\n";
  out << "$timescale 1ns $end\n";
  const auto& sigs = trace.signals();
  std::vector<std::string> ids;
  ids.reserve(sigs.size());
  if (!sigs.empty()) {
    out << "$scope module bridge $end\n";
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      ids.push_back(vcd_identifier(i));
      out << "$var wire " << sigs[i].width << ' ' << ids[i] << ' ' << sigs[i].name;
      if (sigs[i].width > 1) out << " [" << sigs[i].width - 1 << ":0]";
      out << " $end\n";
    }
    out << "$upscope $end\n";
  }
  out << "$enddefinitions $end\n";
  if (sigs.empty()) return;

  out << "#0\n$dumpvars\n";
  struct Event {
    std::uint64_t cycle;
    std::size_t sig;
    std::size_t change;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const auto& ch = sigs[i].changes;
    if (!ch.empty() && ch.front().cycle == 0) {
      write_value(out, sigs[i], ch.front().value, ids[i]);
    } else {
      out << (sigs[i].width == 1 ? "x" : "bx ") << ids[i] << '\n';
    }
    for (std::size_t k = 0; k < ch.size(); ++k) {
      if (ch[k].cycle != 0) events.push_back({ch[k].cycle, i, k});
    }
  }
  out << "$end\n";

  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.cycle < b.cycle; });
  std::uint64_t current = 0;
  for (const auto& e : events) {
    if (e.cycle != current) {
      current = e.cycle;
      out << '#' << current << '\n';
    }
    write_value(out, sigs[e.sig], sigs[e.sig].changes[e.change].value, ids[e.sig]);
  }
  if (trace.cycle_count() > current + 1) out << '#' << trace.cycle_count() - 1 << '\n';
}

std::string export_vcd(const Trace& trace) {
  std::ostringstream os;
  write_vcd(os, trace);
  return os.str();
}

void write_csv(std::ostream& out, const Trace& trace) {
  const auto& sigs = trace.signals();
  out << "cycle";
  for (const auto& s : sigs) out << ',' << s.name;
  out << '\n';
  std::vector<std::size_t> cursor(sigs.size(), 0);
  std::vector<SignalValue> current(sigs.size());
  for (std::uint64_t c = 0; c < trace.cycle_count(); ++c) {
    out << c;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      const auto& ch = sigs[i].changes;
      while (cursor[i] < ch.size() && ch[cursor[i]].cycle <= c) current[i] = ch[cursor[i]++].value;
      out << ',' << to_hex(current[i], sigs[i].width);
    }
    out << '\n';
  }
}

}  // namespace ahb2apb
