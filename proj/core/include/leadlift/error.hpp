#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leadlift {

// Bad argument or violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. position is a 0-based offset into the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string input, std::size_t position, const std::string& what)
      : std::runtime_error(what + " at position " + std::to_string(position) +
                           " in '" + input + "'"),
        input_(std::move(input)),
        position_(position) {}

  const std::string& input() const noexcept { return input_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string input_;
  std::size_t position_;
};

// Search volume above the configured evaluation cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(double required, double cap)
      : std::runtime_error("search volume " + std::to_string(required) +
                           " exceeds cap " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  double required() const noexcept { return required_; }
  double cap() const noexcept { return cap_; }

 private:
  double required_;
  double cap_;
};

// A question about a real number that could not be settled within the
// precision budget (only digit-stream inputs can trigger this).
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace leadlift
