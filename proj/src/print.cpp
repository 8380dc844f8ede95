#include <charconv>
#include <cmath>
#include <string>

#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"

namespace fpdde {
namespace {

std::string shortest(double v) {
  if (!std::isfinite(v)) throw Error("cannot print non-finite constant");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const Expr& e, std::string& out);

void print_list(const Expr& e, const char* sep, std::string& out) {
  out += '(';
  bool first = true;
  for (const auto& c : e.children()) {
    if (!first) out += sep;
    first = false;
    print(c, out);
  }
  out += ')';
}

void print_call(const char* name, const Expr& e, std::string& out) {
  out += name;
  out += '(';
  print(e.child(), out);
  out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const:
      out += format_complex(e.value());
      return;
    case Op::Var:
      out += 'z';
      out += std::to_string(e.index());
      return;
    case Op::Add:
      print_list(e, " + ", out);
      return;
    case Op::Mul:
      print_list(e, "*", out);
      return;
    case Op::Neg:
      out += "(-";
      print(e.child(), out);
      out += ')';
      return;
    case Op::Div:
      out += '(';
      print(e.child(0), out);
      out += '/';
      print(e.child(1), out);
      out += ')';
      return;
    case Op::Pow:
      out += '(';
      print(e.child(), out);
      out += ")^";
      if (e.exponent() < 0) {
        out += "(" + std::to_string(e.exponent()) + ")";
      } else {
        out += std::to_string(e.exponent());
      }
      return;
    case Op::Exp:
      print_call("exp", e, out);
      return;
    case Op::Sin:
      print_call("sin", e, out);
      return;
    case Op::Cos:
      print_call("cos", e, out);
      return;
    case Op::Wp:
      print_call("wp", e, out);
      return;
    case Op::WpPrime:
      print_call("wpd", e, out);
      return;
  }
}

}  // namespace

std::string format_complex(Complex value) {
  const double re = value.real();
  const double im = value.imag();
  if (im == 0.0) {
    return re < 0.0 || std::signbit(re) ? "(" + shortest(re) + ")" : shortest(re);
  }
  if (re == 0.0) return "(" + shortest(im) + "*i)";
  return "(" + shortest(re) + (im < 0.0 ? " - " : " + ") + shortest(std::abs(im)) + "*i)";
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace fpdde
