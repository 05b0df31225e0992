#include "wcl/parser.hpp"

#include <cctype>
#include <sstream>

namespace wcl {

namespace {

constexpr int kMaxExponent = 64;

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!accept(c)) fail("expected " + what);
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  bool starts_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }

  std::string digits() {
    skip_ws();
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      s += text_[pos_];
      advance();
    }
    if (s.empty()) fail("expected digits");
    return s;
  }

  bool accept_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      for (std::size_t i = 0; i < w.size(); ++i) advance();
      return true;
    }
    return false;
  }

 private:
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

int small_int(Cursor& c, const std::string& what, int max) {
  std::string d = c.digits();
  if (d.size() > 9) c.fail(what + " out of range");
  long v = std::stol(d);
  if (v > max) c.fail(what + " out of range");
  return static_cast<int>(v);
}

class ExprParser {
 public:
  explicit ExprParser(Cursor& c) : c_(c) {}

  ChaosElement expr() {
    bool neg = false;
    if (c_.accept('-'))
      neg = true;
    else
      c_.accept('+');
    ChaosElement acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (c_.accept('+'))
        acc = acc + term();
      else if (c_.accept('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

 private:
  ChaosElement term() {
    ChaosElement acc = factor();
    while (c_.accept('*')) acc = acc * factor();
    return acc;
  }

  int exponent() {
    int e = small_int(c_, "exponent", kMaxExponent);
    if (e < 1) c_.fail("exponent must be positive");
    return e;
  }

  ChaosElement factor() {
    if (c_.accept('(')) {
      ChaosElement inner = expr();
      c_.expect(')', "')'");
      if (c_.accept('^')) return inner.pow(static_cast<unsigned>(exponent()));
      return inner;
    }
    if (c_.accept_word("xi")) {
      int i = small_int(c_, "coordinate", 1 << 20);
      if (i < 1) c_.fail("coordinate must be >= 1");
      ChaosElement a = ChaosElement::coordinate(i);
      if (c_.accept('^')) return a.pow(static_cast<unsigned>(exponent()));
      return a;
    }
    if (c_.accept_word("H")) {
      c_.expect('(', "'(' after H");
      int n = small_int(c_, "Hermite order", kMaxExponent);
      c_.expect(',', "','");
      int i = small_int(c_, "coordinate", 1 << 20);
      if (i < 1) c_.fail("coordinate must be >= 1");
      c_.expect(')', "')'");
      ChaosElement a = ChaosElement::hermite(n, i);
      if (c_.accept('^')) return a.pow(static_cast<unsigned>(exponent()));
      return a;
    }
    if (c_.starts_digit()) {
      std::string num = c_.digits();
      std::string text = num;
      if (c_.accept('/')) text += "/" + c_.digits();
      try {
        return ChaosElement::constant(parse_rational(text));
      } catch (const std::invalid_argument& e) {
        c_.fail(e.what());
      }
    }
    c_.fail("unknown atom");
  }

  Cursor& c_;
};

}  // namespace

ChaosElement parse_expression(const std::string& text) {
  Cursor c(text);
  ExprParser p(c);
  ChaosElement result = p.expr();
  if (!c.eof()) c.fail("unexpected trailing input");
  return result;
}

Direction parse_direction(const std::string& text) {
  Cursor c(text);
  Direction d;
  bool first = true;
  while (!c.eof()) {
    Rational sign = 1;
    if (c.accept('-'))
      sign = -1;
    else if (c.accept('+')) {
      // explicit plus
    } else if (!first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff = 1;
    if (c.starts_digit()) {
      std::string num = c.digits();
      if (c.accept('/')) {
        std::string den = c.digits();
        coeff = parse_rational(num + "/" + den);
      } else {
        coeff = parse_rational(num);
      }
      c.expect('*', "'*' between coefficient and basis vector");
    }
    if (!c.accept_word("e")) c.fail("expected basis vector e<i>");
    int i = small_int(c, "coordinate", 1 << 20);
    if (i < 1) c.fail("coordinate must be >= 1");
    d.set(i, d.get(i) + sign * coeff);
  }
  if (first) c.fail("empty direction");
  return d;
}

std::string format_element(const ChaosElement& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [a, c] : f.terms()) {
    Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    std::vector<std::string> factors;
    if (mag != 1 || a.entries().empty()) factors.push_back(format_rational(mag));
    for (auto& [i, n] : a.entries()) {
      if (n == 1)
        factors.push_back("xi" + std::to_string(i));
      else
        factors.push_back("H(" + std::to_string(n) + "," + std::to_string(i) + ")");
    }
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (j) out << "*";
      out << factors[j];
    }
  }
  return out.str();
}

std::string format_direction(const Direction& d) {
  if (d.is_zero()) return "0*e1";
  std::ostringstream out;
  bool first = true;
  for (auto& [i, v] : d.coords()) {
    Rational mag = v < 0 ? -v : v;
    if (first) {
      if (v < 0) out << "-";
      first = false;
    } else {
      out << (v < 0 ? " - " : " + ");
    }
    if (mag != 1) out << format_rational(mag) << "*";
    out << "e" << i;
  }
  return out.str();
}

}  // namespace wcl
