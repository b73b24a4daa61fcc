#include "lipmod/parse.hpp"

#include <cctype>
#include <stdexcept>

#include "lipmod/error.hpp"

namespace lipmod {

namespace {

// expr    := term (('+' | '-') term)*
// term    := unary ('*' unary)*
// unary   := ('+' | '-') unary | power
// power   := primary ('^' integer)?
// primary := integer ('/' integer)? | identifier | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const Bindings& bindings, const VarNames& names)
      : text_(text), bindings_(bindings), names_(names) {}

  BiPoly run() {
    skip_ws();
    if (pos_ == text_.size()) fail(ParseErrorKind::Syntax, "empty expression");
    BiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(ParseErrorKind::Syntax, std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  std::string_view text_;
  const Bindings& bindings_;
  const VarNames& names_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg, std::size_t at) const {
    throw ParseError(kind, at, msg);
  }
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const { fail(kind, msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BiPoly expr() {
    BiPoly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  BiPoly term() {
    BiPoly acc = unary();
    while (accept('*')) {
      const std::size_t at = pos_;
      try {
        acc = acc * unary();
      } catch (const std::overflow_error&) {
        fail(ParseErrorKind::ExponentOverflow, "exponent exceeds 2^16", at);
      }
    }
    return acc;
  }

  BiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BiPoly power() {
    BiPoly base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(ParseErrorKind::Syntax, "exponent must be a non-negative integer literal");
    mpz_class e(std::string(digits()), 10);
    if (e > kMaxExponent) fail(ParseErrorKind::ExponentOverflow, "exponent exceeds 2^16", at);
    try {
      return base.pow(static_cast<unsigned>(e.get_ui()));
    } catch (const std::overflow_error&) {
      fail(ParseErrorKind::ExponentOverflow, "exponent exceeds 2^16", at);
    }
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  BiPoly primary() {
    skip_ws();
    if (pos_ == text_.size()) fail(ParseErrorKind::Syntax, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly inner = expr();
      if (!accept(')')) fail(ParseErrorKind::Syntax, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(std::string(digits()), 10);
      mpz_class den = 1;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail(ParseErrorKind::Syntax, "division is only allowed between integer literals");
        den = mpz_class(std::string(digits()), 10);
        if (den == 0) fail(ParseErrorKind::Syntax, "zero denominator", at);
      }
      if (pos_ < text_.size() && text_[pos_] == '.')
        fail(ParseErrorKind::Syntax, "floating literals are not accepted");
      return BiPoly::constant(Scalar(Rational(num, den)), names_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == names_[0]) return BiPoly::variable(0, names_);
      if (id == names_[1]) return BiPoly::variable(1, names_);
      auto it = bindings_.find(id);
      if (it == bindings_.end())
        fail(ParseErrorKind::UnboundIdentifier, "unbound identifier '" + std::string(id) + "'", start);
      return BiPoly::constant(Scalar(it->second), names_);
    }
    fail(ParseErrorKind::Syntax, std::string("unexpected '") + c + "'");
  }
};

}  // namespace

BiPoly parse_poly(std::string_view text, const Bindings& bindings, const VarNames& names) {
  return Parser(text, bindings, names).run();
}

}  // namespace lipmod
