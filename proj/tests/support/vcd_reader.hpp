#pragma once

// Minimal standalone VCD parser used to check exported dumps. It follows the
// IEEE 1364 value-change grammar directly and shares no code with the writer.

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcd {

struct Var {
  std::string id;
  std::string name;
  unsigned width = 0;
  // (time, binary string MSB first, padded to width)
  std::vector<std::pair<std::uint64_t, std::string>> changes;
};

struct Dump {
  std::string timescale;
  std::vector<std::string> scopes;
  std::map<std::string, Var> vars;  // keyed by name
  std::vector<std::uint64_t> times;
  bool saw_enddefinitions = false;

  const Var& var(const std::string& name) const {
    auto it = vars.find(name);
    if (it == vars.end()) throw std::out_of_range("no VCD var " + name);
    return it->second;
  }

  // Binary value in effect at `t`; all 'x' before the first change.
  std::string at(const std::string& name, std::uint64_t t) const {
    const Var& v = var(name);
    std::string cur(v.width, 'x');
    for (const auto& [time, val] : v.changes) {
      if (time > t) break;
      cur = val;
    }
    return cur;
  }

  std::uint64_t u64(const std::string& name, std::uint64_t t) const {
    const std::string b = at(name, t);
    std::uint64_t r = 0;
    for (char c : b) {
      if (c != '0' && c != '1') throw std::runtime_error("non-binary value for " + name);
      r = (r << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return r;
  }
};

inline std::string pad(const std::string& bits, unsigned width) {
  if (bits.size() > width) throw std::runtime_error("value wider than var: " + bits);
  // Left-extend per the VCD rule: 0/1 extend with 0, x/z extend with themselves.
  char fill = bits.empty() ? '0' : bits[0];
  if (fill == '1') fill = '0';
  return std::string(width - bits.size(), fill) + bits;
}

inline Dump parse(const std::string& text) {
  Dump d;
  std::istringstream in(text);
  std::map<std::string, std::string> id_to_name;
  std::string tok;
  std::uint64_t now = 0;
  bool have_time = false;

  auto read_until_end = [&](std::vector<std::string>& out) {
    std::string t;
    while (in >> t) {
      if (t == "$end") return;
      out.push_back(t);
    }
    throw std::runtime_error("unterminated section");
  };

  auto apply = [&](const std::string& id, const std::string& bits) {
    auto it = id_to_name.find(id);
    if (it == id_to_name.end()) throw std::runtime_error("unknown identifier " + id);
    if (!have_time) throw std::runtime_error("value change before any timestamp");
    Var& v = d.vars[it->second];
    v.changes.emplace_back(now, pad(bits, v.width));
  };

  while (in >> tok) {
    if (tok == "$version" || tok == "$date" || tok == "$comment" || tok == "$upscope") {
      std::vector<std::string> skip;
      read_until_end(skip);
    } else if (tok == "$timescale") {
      std::vector<std::string> parts;
      read_until_end(parts);
      for (const auto& p : parts) d.timescale += p;
    } else if (tok == "$scope") {
      std::vector<std::string> parts;
      read_until_end(parts);
      if (parts.size() != 2) throw std::runtime_error("bad $scope");
      d.scopes.push_back(parts[1]);
    } else if (tok == "$var") {
      std::vector<std::string> parts;
      read_until_end(parts);
      if (parts.size() < 4) throw std::runtime_error("bad $var");
      Var v;
      v.width = static_cast<unsigned>(std::stoul(parts[1]));
      v.id = parts[2];
      v.name = parts[3];
      if (v.width == 0) throw std::runtime_error("zero-width var");
      if (d.vars.count(v.name)) throw std::runtime_error("duplicate var " + v.name);
      if (id_to_name.count(v.id)) throw std::runtime_error("duplicate id " + v.id);
      id_to_name[v.id] = v.name;
      d.vars[v.name] = v;
    } else if (tok == "$enddefinitions") {
      std::vector<std::string> skip;
      read_until_end(skip);
      d.saw_enddefinitions = true;
    } else if (tok == "$dumpvars" || tok == "$end") {
      // value changes inside $dumpvars are parsed like any others
    } else if (tok[0] == '#') {
      const std::uint64_t t = std::stoull(tok.substr(1));
      if (have_time && t < now) throw std::runtime_error("time goes backwards");
      now = t;
      have_time = true;
      d.times.push_back(t);
    } else if (tok[0] == 'b' || tok[0] == 'B') {
      std::string id;
      if (!(in >> id)) throw std::runtime_error("vector change without id");
      const std::string bits = tok.substr(1);
      if (bits.empty() || bits.find_first_not_of("01xzXZ") != std::string::npos) {
        throw std::runtime_error("bad vector value " + tok);
      }
      apply(id, bits);
    } else if (tok[0] == '0' || tok[0] == '1' || tok[0] == 'x' || tok[0] == 'z') {
      if (tok.size() < 2) throw std::runtime_error("scalar change without id");
      apply(tok.substr(1), tok.substr(0, 1));
    } else {
      throw std::runtime_error("unexpected token " + tok);
    }
  }
  if (!d.saw_enddefinitions) throw std::runtime_error("missing $enddefinitions");
  return d;
}

}  // namespace vcd
