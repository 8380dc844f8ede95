#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpdde {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or range error while reading an expression. `position` is a 0-based
// byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Evaluation landed on (or too close to) a pole: a vanishing denominator or a
// lattice point of the Weierstrass function.
class PoleHit : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

// A problem, operator or constructor input violates its invariants.
class ProblemError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpdde
