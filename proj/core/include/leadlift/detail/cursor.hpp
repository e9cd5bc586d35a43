#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "leadlift/error.hpp"
#include "leadlift/rational.hpp"

namespace leadlift::detail {

// Strict left-to-right scanner producing position-annotated ParseErrors.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t offset = 0, std::string full = {})
      : text_(text), offset_(offset), full_(full.empty() ? std::string(text) : std::move(full)) {}

  bool done() const noexcept { return pos_ == text_.size(); }
  std::size_t position() const noexcept { return offset_ + pos_; }
  char peek() const noexcept { return done() ? '\0' : text_[pos_]; }
  std::string_view rest() const noexcept { return text_.substr(pos_); }
  void advance(std::size_t n) { pos_ += n; }

  bool consume(char c) {
    if (peek() != c || done()) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view word) {
    if (rest().substr(0, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(position(), what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw ParseError(full_, at, what);
  }

  Integer integer();
  std::uint64_t unsigned64();
  // p, p/q, or a decimal literal with optional exponent.
  Rational rational();
  // Decimal literal only; returns the exact value and the literal text.
  Rational decimal(std::string* literal = nullptr);

 private:
  std::string_view digits();

  std::string_view text_;
  std::size_t offset_;
  std::string full_;
  std::size_t pos_ = 0;
};

}  // namespace leadlift::detail
