#pragma once

// Recursive-descent parser for the textual polynomial grammars.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := primary ['^' ['-'] digits]
//   primary := digits | identifier | '(' expr ')'
//
// Identifiers are a run of letters (any byte >= 0x80 counts as a letter, so
// UTF-8 symbols such as "θ" work) followed by optional digits: "t", "x12".
// The target ring is supplied by a builder:
//
//   Value constant(const Integer&) const;
//   Value variable(std::string_view name, const SourcePos&) const;
//   Value power(const Value&, long exponent, const SourcePos&) const;
//   Value divide(const Value&, const Value&, const SourcePos&) const;

#include "equilef/core.hpp"

#include <cctype>
#include <string_view>

namespace equilef {

struct SourcePos {
  int line = 1;
  int column = 1;
};

namespace detail {

template <class Value, class Builder>
class ExpressionParser {
public:
  ExpressionParser(std::string_view text, const Builder& builder)
      : text_(text), builder_(builder) {}

  Value parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Value v = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return v;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  SourcePos where() const {
    SourcePos p;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++p.column;
      }
    }
    return p;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    SourcePos p = where();
    throw ParseError(msg, p.line, p.column);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool is_letter(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_' || u >= 0x80;
  }

  Value expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Value acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      Value rhs = term();
      if (c == '+')
        acc = acc + rhs;
      else
        acc = acc - rhs;
    }
  }

  Value term() {
    Value acc = factor();
    for (;;) {
      skip_space();
      char c = peek();
      if (c != '*' && c != '/') return acc;
      SourcePos op = where();
      ++pos_;
      Value rhs = factor();
      if (c == '*')
        acc = acc * rhs;
      else
        acc = builder_.divide(acc, rhs, op);
    }
  }

  Value factor() {
    Value base = primary();
    skip_space();
    if (peek() != '^') return base;
    SourcePos op = where();
    ++pos_;
    skip_space();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 1000000) fail("exponent too large");
    }
    return builder_.power(base, negative ? -e : e, op);
  }

  Value primary() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value inner = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return builder_.constant(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (is_letter(c)) {
      SourcePos at = where();
      std::size_t start = pos_;
      while (!at_end() && is_letter(peek())) ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return builder_.variable(text_.substr(start, pos_ - start), at);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Builder& builder_;
  std::size_t pos_ = 0;
};

} // namespace detail

template <class Value, class Builder>
Value parse_expression(std::string_view text, const Builder& builder) {
  return detail::ExpressionParser<Value, Builder>(text, builder).parse();
}

/// Raises base to a non-negative power by repeated squaring.
template <class Value>
Value power_nonnegative(Value base, long e, Value one) {
  Value acc = std::move(one);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

} // namespace equilef
