#pragma once

#include <cctype>
#include <string>

#include "affcurv/polynomial.hpp"

namespace affcurv {

// Text grammar for polynomials: identifiers for variables, `^` exponents,
// explicit `*` products, integer or rational literals (`3`, `-2/5`).
// Whitespace-insensitive. Parentheses are accepted as a convenience.
class PolyParser {
 public:
  PolyParser(std::string text, Ctx ctx) : s_(std::move(text)), ctx_(std::move(ctx)) {}

  QPoly parse() {
    QPoly r = expr();
    skip_ws();
    if (pos_ < s_.size()) err("unexpected trailing input");
    return r;
  }

 private:
  std::string s_;
  Ctx ctx_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void err(const std::string& what) {
    fail(Errc::Parse, "parse error at line " + std::to_string(line_) + ", column " +
                          std::to_string(col_) + ": " + what);
  }

  void advance() {
    if (pos_ < s_.size()) {
      if (s_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
      ++pos_;
    }
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) { advance(); return true; }
    return false;
  }

  QPoly expr() {
    QPoly acc = term(peek() == '-' || peek() == '+' ? sign_prefix() : 1);
    for (;;) {
      char c = peek();
      if (c == '+') { advance(); acc = acc + term(1); }
      else if (c == '-') { advance(); acc = acc + term(-1); }
      else break;
    }
    return acc;
  }

  int sign_prefix() {
    int s = 1;
    for (;;) {
      char c = peek();
      if (c == '-') { s = -s; advance(); }
      else if (c == '+') advance();
      else break;
    }
    return s;
  }

  QPoly term(int sign) {
    QPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    if (sign < 0) return -acc;
    return acc;
  }

  QPoly factor() {
    char c = peek();
    int sign = 1;
    if (c == '-' || c == '+') { sign = sign_prefix(); c = peek(); }
    QPoly base(ctx_);
    if (c == '(') {
      advance();
      base = expr();
      if (!eat(')')) err("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = QPoly::constant(ctx_, number());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      int i = ctx_->index_of(name);
      if (i < 0) err("unknown variable '" + name + "'");
      base = QPoly::variable(ctx_, i, Rat(1));
    } else if (c == '\0') {
      err("unexpected end of input");
    } else {
      err(std::string("unexpected character '") + c + "'");
    }
    if (eat('^')) {
      long e = natural();
      base = pow(base, e);
    }
    if (sign < 0) return -base;
    return base;
  }

  std::string ident() {
    skip_ws();
    std::string out;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      out += s_[pos_];
      advance();
    }
    return out;
  }

  long natural() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      err("expected a number");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) err("exponent too large");
      advance();
    }
    return v;
  }

  Rat number() {
    skip_ws();
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      digits += s_[pos_];
      advance();
    }
    Int num(digits);
    // a '/' directly after an integer literal is a rational literal
    std::size_t save_pos = pos_;
    int save_line = line_, save_col = col_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      advance();
      skip_ws();
      std::string den;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        den += s_[pos_];
        advance();
      }
      if (den.empty()) err("expected denominator digits");
      Rat r(num, Int(den));
      r.canonicalize();
      return r;
    }
    pos_ = save_pos; line_ = save_line; col_ = save_col;
    return Rat(num);
  }
};

inline QPoly parse_poly(const std::string& text, const Ctx& ctx) {
  return PolyParser(text, ctx).parse();
}

}  // namespace affcurv
