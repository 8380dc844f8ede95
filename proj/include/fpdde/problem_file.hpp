#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"
#include "fpdde/operators.hpp"
#include "fpdde/verify.hpp"

namespace fpdde {

// Malformed problem document. The message names the offending field and, for
// JSON syntax errors or expression errors, the byte position.
class ProblemFileError : public Error {
 public:
  using Error::Error;
};

struct PolicyOverrides {
  std::optional<int> samples;
  std::optional<double> radius;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<double> pole_epsilon;

  // Fields set here replace those of `base`.
  SamplingPolicy apply(SamplingPolicy base) const;
};

// Problem document (JSON):
//   {
//     "n": 3,                      dimension
//     "kind": "fte",               fermat|xc|xw|equ1|equ2|fte|ftee|fg
//     "m1": 2, "m2": 1,            m2 optional (default 1)
//     "c": [[0, 0], [0, 3.14159...], ...],   shift as [re, im] pairs
//     "f": "...",                  candidate, grammar string
//     "g", "alpha", "beta", "phi": grammar strings, as the kind requires
//     "operator": [{"index": [1, 0, 0], "coeff": "1"}, ...]   kind fg
//     "policy": {"samples": 200, "radius": 2, "tol": 1e-8, "seed": 42,
//                "pole_epsilon": 1e-8}
//     "expected_status": "pass" | "fail" | "inconsistent",
//     "description": "..."
//   }
// For xc/xw the powers (n, m) of the two-variable literature map to (m1, m2).
struct ProblemFile {
  PDDEProblem problem;
  std::optional<Expr> candidate;
  PolicyOverrides policy;
  std::string expected_status;
  std::string description;
};

ProblemFile parse_problem_document(std::string_view json_text);
ProblemFile load_problem_file(const std::filesystem::path& path);

// Inverse of parse_problem_document; expressions are written with to_string
// and the shift as [re, im] pairs, so reloading is bit-exact.
std::string write_problem_document(const PDDEProblem& problem, const Expr& candidate,
                                   std::string_view expected_status = "pass",
                                   std::string_view description = {});

// Flat key=value lines.
std::string report_to_text(const VerificationReport& report);
// Single JSON object.
std::string report_to_json(const VerificationReport& report);

std::string growth_to_text(const GrowthEstimate& est);
std::string growth_to_json(const GrowthEstimate& est);

}  // namespace fpdde
