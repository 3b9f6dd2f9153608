#include <cctype>

#include "qhv/polyring.hpp"

namespace qhv {

namespace {

// expr    := ['-'|'+'] term (('+'|'-') term)*
// term    := factor (['*'] factor)*
// factor  := primary ['^' ['-'] integer]
// primary := number ['/' number] | identifier | '(' expr ')'
class Parser {
 public:
  Parser(Context ctx, std::string_view text) : ctx_(std::move(ctx)), text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_' || c == '(';
  }

  Polynomial expr() {
    Polynomial acc(ctx_);
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Polynomial t = term();
    acc = negate ? -t : t;
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial next = term();
      if (c == '+') {
        acc += next;
      } else {
        acc -= next;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        acc *= factor();
      } else if (starts_factor()) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(pos_ < text_.size() ? text_[pos_] : '\0'))) {
          fail("expected denominator");
        }
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      Rational r(num, den);
      r.canonicalize();
      return Polynomial::constant(ctx_, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (!ctx_->index_of(name)) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ctx_, name);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  Context ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(Context ctx, std::string_view text) {
  try {
    return Parser(std::move(ctx), text).parse();
  } catch (const DomainError& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  } catch (const NonUnitImage& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

}  // namespace qhv
