#pragma once

#include <stdexcept>
#include <string>

namespace ahb2apb {

// Frame built from a bit sequence or hex string of the wrong size.
class FrameLengthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value violates a domain invariant (one-hot select, field width, ...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// load_response while a response is still being shifted out.
class BusyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Peripheral access whose select lines do not address the peripheral.
class NotSelectedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid scenario or decode map.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input (hex, JSON, register file lines).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ahb2apb
