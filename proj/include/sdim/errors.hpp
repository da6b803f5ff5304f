#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed polynomial, family or set text. position is a 0-based offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), reason(what), position(pos) {}
  std::string reason;
  std::size_t position;
};

// Enumeration budget or state-graph cap exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// The input generates the unit ideal; sigma-dimension of the zero ring is undefined.
struct UnitIdeal : Error {
  using Error::Error;
};

}  // namespace sdim
