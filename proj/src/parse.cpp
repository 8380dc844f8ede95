#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"

namespace fpdde {
namespace {

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  Expr parse_all() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::neg(term()));
      } else {
        break;
      }
    }
    return Expr::add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    std::vector<Expr> factors{acc};
    for (;;) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (accept('/')) {
        Expr num = Expr::mul(std::move(factors));
        factors = {Expr::div(num, unary())};
      } else {
        break;
      }
    }
    return Expr::mul(std::move(factors));
  }

  Expr unary() {
    if (accept('-')) return Expr::neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    return Expr::pow(base, exponent());
  }

  int exponent() {
    skip_space();
    const std::size_t start = pos_;
    const bool paren = accept('(');
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail_at("non-integer exponent", start);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail_at("non-integer exponent", start);
    }
    int k = 0;
    const auto res = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
    if (res.ec != std::errc{}) fail_at("exponent out of range", start);
    if (paren) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail_at("non-integer exponent", start);
      ++pos_;
    }
    return negative ? -k : k;
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digit_run = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digit_run();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digit_run();
    }
    // Exponent only when digits follow, so "2e" is not swallowed.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digit_run();
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) fail_at("malformed number", start);
    return Expr(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "i") return Expr(Complex(0.0, 1.0));
    if (name == "pi") return Expr(std::numbers::pi);
    if (name == "e") return Expr(std::numbers::e);

    if (name.size() > 1 && name[0] == 'z' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      int idx = 0;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec != std::errc{} || idx < 1 || idx > dimension_) {
        fail_at("variable index out of range: " + std::string(name) + " with dimension " +
                    std::to_string(dimension_),
                start);
      }
      return Expr::var(idx);
    }

    if (name == "exp" || name == "sin" || name == "cos" || name == "sqrt" || name == "wp" ||
        name == "wpd") {
      expect('(');
      const std::size_t arg_start = pos_;
      Expr arg = expr();
      expect(')');
      if (name == "exp") return Expr::exp(arg);
      if (name == "sin") return Expr::sin(arg);
      if (name == "cos") return Expr::cos(arg);
      if (name == "wp") return Expr::wp(arg);
      if (name == "wpd") return Expr::wp_prime(arg);
      const Expr folded = fold_constants(arg);
      if (!folded.is_constant() || folded.value().imag() != 0.0 || folded.value().real() < 0.0) {
        fail_at("sqrt requires a non-negative real constant argument", arg_start);
      }
      return Expr(std::sqrt(folded.value().real()));
    }
    fail_at("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, int dimension) {
  if (dimension < 1) throw ParseError("dimension must be >= 1", 0);
  return fold_constants(Parser(text, dimension).parse_all());
}

Complex parse_constant(std::string_view text) {
  // Dimension 0 would be rejected; any variable reference fails the constant check below.
  const Expr e = parse(text, 1);
  if (!e.is_constant()) throw ParseError("expected a constant expression", 0);
  return e.value();
}

}  // namespace fpdde
