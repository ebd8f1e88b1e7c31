#pragma once

#include <bitset>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ahb2apb {

inline constexpr unsigned kMaxSignalWidth = 128;
using SignalValue = std::bitset<kMaxSignalWidth>;

struct SignalChange {
  std::uint64_t cycle = 0;
  SignalValue value;
};

struct Signal {
  std::string name;
  unsigned width = 1;
  std::vector<SignalChange> changes;  // strictly increasing cycles
};

// Time-indexed record of named signals. Only value changes are stored.
class Trace {
 public:
  using SignalId = std::size_t;

  // Throws std::invalid_argument on a duplicate name or a width outside 1..128.
  SignalId declare(std::string name, unsigned width);

  // Records `value` at `cycle` if it differs from the last recorded value.
  // Cycles must not go backwards; values must fit the declared width.
  void record(SignalId id, std::uint64_t cycle, const SignalValue& value);
  void record(SignalId id, std::uint64_t cycle, std::uint64_t value) {
    record(id, cycle, SignalValue(value));
  }

  // Number of simulated cycles covered by the trace.
  std::uint64_t cycle_count() const { return cycle_count_; }
  void set_cycle_count(std::uint64_t n) { cycle_count_ = n; }

  const std::vector<Signal>& signals() const { return signals_; }
  std::optional<SignalId> find(std::string_view name) const;
  const Signal& signal(std::string_view name) const;

  // Value in effect at `cycle` (zero before the first recorded change).
  SignalValue value_at(SignalId id, std::uint64_t cycle) const;
  std::uint64_t u64_at(std::string_view name, std::uint64_t cycle) const;

  // Changes recorded after `cycle` across all signals.
  std::size_t changes_after(std::uint64_t cycle) const;

 private:
  std::vector<Signal> signals_;
  std::unordered_map<std::string, SignalId> index_;
  std::uint64_t cycle_count_ = 0;
};

std::string to_hex(const SignalValue& v, unsigned width);
std::string to_binary(const SignalValue& v, unsigned width);
std::uint64_t to_u64(const SignalValue& v);

// Value Change Dump: timescale 1ns, one time unit per cycle, scope "bridge".
void write_vcd(std::ostream& out, const Trace& trace);
std::string export_vcd(const Trace& trace);

// Header row "cycle,<signal names...>", then one row of hex values per cycle.
void write_csv(std::ostream& out, const Trace& trace);

}  // namespace ahb2apb
