#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"

namespace fpdde::detail {

// True when e evaluates to (numerically) zero at every probe point that is not
// a pole. Used for "not identically zero" invariants.
inline bool vanishes_on_probe(const Expr& e, int dimension, int points = 8) {
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Complex> z(static_cast<std::size_t>(dimension));
  for (int k = 0; k < points; ++k) {
    for (auto& x : z) x = {u(rng), u(rng)};
    try {
      if (std::abs(eval(e, z)) > 1e-14) return false;
    } catch (const PoleHit&) {
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

}  // namespace fpdde::detail
