#pragma once

// Expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := rational | 'I' | ident | 'E' '(' ident ';' int ')'
//           | 'cos(' ident ')' | 'sin(' ident ')' | '(' expr ')'
// Rationals are "p/q" or integers.  Affine identifiers are polynomial
// variables; periodic identifiers may appear only inside E/cos/sin.

#include <cctype>
#include <string>
#include <string_view>

#include "tgk/ring.hpp"

namespace tgk {

namespace detail {

class ExprParser {
public:
  ExprParser(std::string_view src, ChartPtr chart) : src_(src), chart_(std::move(chart)) {}

  RingElement parse() {
    RingElement r = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  bool peek_ident() {
    skip_ws();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(src_.substr(start, pos_ - start));
  }

  long signed_int() {
    bool neg = accept('-');
    if (!neg) accept('+');
    std::string d = digits();
    if (d.size() > 9) fail("integer too large");
    long v = std::stol(d);
    return neg ? -v : v;
  }

  RingElement expr() {
    RingElement r = term();
    for (;;) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }

  RingElement term() {
    RingElement r = factor();
    while (accept('*')) r = r * factor();
    return r;
  }

  RingElement factor() {
    if (accept('-')) return -factor();
    RingElement base = atom();
    if (accept('^')) {
      std::string d = digits();
      if (d.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }

  std::size_t periodic_arg(const std::string& fn) {
    expect('(');
    std::size_t at = pos_;
    std::string name = ident();
    auto idx = chart_->index_of(name);
    if (!idx) {
      pos_ = at;
      fail("unknown coordinate '" + name + "'");
    }
    if (!chart_->is_periodic(*idx)) {
      pos_ = at;
      fail(fn + " needs a periodic coordinate, '" + name + "' is affine");
    }
    return *idx;
  }

  RingElement atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      RingElement r = expr();
      expect(')');
      return r;
    }
    if (peek_digit()) {
      std::size_t at = pos_;
      std::string num = digits();
      std::string den = "1";
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        den = digits();
      }
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = at;
        fail("zero denominator");
      }
      Rational q(num + "/" + den);
      q.canonicalize();
      return RingElement::constant(chart_, Scalar(q));
    }
    if (!peek_ident()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    std::size_t at = pos_;
    std::string name = ident();
    if (name == "I") return RingElement::constant(chart_, Scalar::i());
    if (name == "E") {
      std::size_t idx = periodic_arg("E");
      expect(';');
      long k = signed_int();
      expect(')');
      return RingElement::exponential(chart_, idx, static_cast<int>(k));
    }
    if (name == "cos" || name == "sin") {
      std::size_t idx = periodic_arg(name);
      expect(')');
      RingElement ep = RingElement::exponential(chart_, idx, 1);
      RingElement em = RingElement::exponential(chart_, idx, -1);
      if (name == "cos") return (ep + em) * Scalar(Rational(1, 2));
      // (e^{iy} - e^{-iy}) / (2i)
      return (ep - em) * Scalar(Rational(0), Rational(-1, 2));
    }
    auto idx = chart_->index_of(name);
    if (!idx) {
      pos_ = at;
      fail("unknown coordinate '" + name + "'");
    }
    if (chart_->is_periodic(*idx)) {
      pos_ = at;
      fail("polynomial degree on periodic coordinate '" + name + "'");
    }
    return RingElement::coordinate(chart_, *idx);
  }

  std::string_view src_;
  ChartPtr chart_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RingElement parse_expr(std::string_view src, const ChartPtr& chart) {
  return detail::ExprParser(src, chart).parse();
}

}  // namespace tgk
