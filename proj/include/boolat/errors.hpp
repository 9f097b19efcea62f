#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boolat {

/// Argument outside an operation's documented domain. Maps to CLI exit code 1.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands with mismatched widths or arities.
class dimension_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Request exceeds a hard capacity guard (search space, key bits, element
/// count). Maps to CLI exit code 2.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input; position() is a byte offset into the input.
class parse_error : public domain_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : domain_error(what + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Seeded generation could not produce an admissible value within its retry
/// budget.
class generation_error : public domain_error {
 public:
  using domain_error::domain_error;
};

}  // namespace boolat
