#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpdde {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInputError = 2 };

// Runs one invocation. args excludes the program name.
//   verify <file>                       residual check of a problem document
//   construct --theorem T --c ... --g   closed-form solution plus its check
//   order <file|expr>                   max-modulus order estimate
//   fermat --kind K --h EXPR            Fermat pair and its residual check
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpdde
