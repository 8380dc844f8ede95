#include "fpdde/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "fpdde/constructors.hpp"
#include "fpdde/error.hpp"
#include "fpdde/problem_file.hpp"
#include "fpdde/verify.hpp"

namespace fpdde {
namespace {

struct PolicyFlags {
  int samples = 0;
  double radius = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* app) {
    samples_opt = app->add_option("--samples", samples, "Number of sample points (default 200)");
    radius_opt = app->add_option("--radius", radius, "Polydisc radius (default 2)");
    tol_opt = app->add_option("--tol", tol, "Relative residual tolerance (default 1e-8)");
    seed_opt = app->add_option("--seed", seed, "Sampling seed (default 42)");
  }

  // Flags win over file-level settings.
  SamplingPolicy resolve(const PolicyOverrides& file) const {
    SamplingPolicy p = file.apply(SamplingPolicy{});
    if (samples_opt->count()) p.samples = samples;
    if (radius_opt->count()) p.radius = radius;
    if (tol_opt->count()) p.tolerance = tol;
    if (seed_opt->count()) p.seed = seed;
    p.validate();
    return p;
  }
};

std::vector<Complex> parse_shift_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_constant(item));
  return out;
}

int verdict_code(bool pass) { return pass ? kExitPass : kExitFail; }

int cmd_verify(const std::string& path, const PolicyFlags& flags, bool machine, std::ostream& out) {
  const ProblemFile pf = load_problem_file(path);
  if (!pf.candidate) throw ProblemFileError(path + ": field 'f' is required for verify");
  const SamplingPolicy policy = flags.resolve(pf.policy);
  const VerificationReport report = verify_problem(pf.problem, *pf.candidate, policy);
  if (machine) {
    out << "{\"file\":" << nlohmann::json(path).dump() << ",\"kind\":\"" << kind_name(pf.problem.kind)
        << "\",\"expected_status\":" << nlohmann::json(pf.expected_status).dump()
        << ",\"report\":" << report_to_json(report) << "}\n";
  } else {
    out << "file=" << path << '\n' << "kind=" << kind_name(pf.problem.kind) << '\n';
    if (!pf.expected_status.empty()) out << "expected_status=" << pf.expected_status << '\n';
    out << report_to_text(report);
  }
  return verdict_code(report.pass);
}

struct ConstructArgs {
  std::string theorem;
  int n = 0;
  std::string shift;
  std::string g;
  std::string phi = "1";
  std::string emit;
};

Construction build(const ConstructArgs& a) {
  const bool legacy = a.theorem == "equ1" || a.theorem == "equ2";
  const int n = legacy && a.n == 0 ? 2 : a.n;
  if (n < 1) throw ProblemError("--n is required");
  const std::vector<Complex> c = parse_shift_list(a.shift);
  if (c.size() != static_cast<std::size_t>(n)) throw ProblemError("--c must list n components");
  const Expr g = parse(a.g, n);
  const Expr phi = parse(a.phi, n);

  if (a.theorem == "t1-i" || a.theorem == "t1-ii") {
    return construct_t1({n, c, a.theorem == "t1-i" ? SolutionForm::I : SolutionForm::II, g, phi});
  }
  if (a.theorem == "t2-i" || a.theorem == "t2-ii") {
    return construct_t2({n, c, a.theorem == "t2-i" ? SolutionForm::I : SolutionForm::II, g, phi});
  }
  if (a.theorem == "cor1") return construct_cor1(n, c, g);
  if (a.theorem == "cor2") return construct_cor2(n, c, g);
  if (a.theorem == "equ1") return construct_legacy(LegacyEquation::Equ1, g, c);
  if (a.theorem == "equ2") return construct_legacy(LegacyEquation::Equ2, g, c);
  throw ProblemError("unknown theorem '" + a.theorem + "'");
}

int cmd_construct(const ConstructArgs& a, const PolicyFlags& flags, bool machine, std::ostream& out) {
  const Construction made = build(a);
  const SamplingPolicy policy = flags.resolve({});
  const VerificationReport report = verify_problem(made.problem, made.f, policy);
  const std::string doc = write_problem_document(made.problem, made.f, "pass", "constructed by " + a.theorem);
  if (!a.emit.empty()) {
    std::ofstream file(a.emit, std::ios::binary);
    if (!file) throw ProblemFileError("cannot write '" + a.emit + "'");
    file << doc;
  }
  if (machine) {
    out << "{\"f\":" << nlohmann::json(to_string(made.f)).dump()
        << ",\"problem\":" << nlohmann::json::parse(doc).dump() << ",\"report\":" << report_to_json(report) << "}\n";
  } else {
    out << "f=" << to_string(made.f) << '\n' << "kind=" << kind_name(made.problem.kind) << '\n';
    out << report_to_text(report);
  }
  return verdict_code(report.pass);
}

int cmd_order(const std::string& target, int n, int directions, std::uint64_t seed, bool machine,
              std::ostream& out) {
  Expr f;
  int dim = n;
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec)) {
    const ProblemFile pf = load_problem_file(target);
    if (!pf.candidate) throw ProblemFileError(target + ": field 'f' is required for order");
    f = *pf.candidate;
    dim = pf.problem.dimension;
  } else {
    if (dim < 1) throw ProblemError("--n is required when estimating the order of an expression");
    f = parse(target, dim);
  }
  const auto radii = default_order_radii();
  const GrowthEstimate est = estimate_order(f, dim, radii, {directions, seed});
  out << (machine ? growth_to_json(est) + "\n" : growth_to_text(est));
  return kExitPass;
}

int cmd_fermat(const std::string& kind, const std::string& h_text, int n, const PolicyFlags& flags, bool machine,
               std::ostream& out) {
  FermatFamily family;
  if (kind == "cos-sin") {
    family = FermatFamily::CosSin;
  } else if (kind == "mobius") {
    family = FermatFamily::Mobius;
  } else if (kind == "cubic") {
    family = FermatFamily::Cubic;
  } else {
    throw ProblemError("unknown Fermat family '" + kind + "'");
  }
  const Expr h = parse(h_text, n);
  const FermatPair pair = construct_fermat_pair(family, h);
  const PDDEProblem problem = fermat_problem(pair, n);
  const VerificationReport report = verify_problem(problem, pair.f, flags.resolve({}));
  if (machine) {
    out << "{\"f\":" << nlohmann::json(to_string(pair.f)).dump() << ",\"g\":" << nlohmann::json(to_string(pair.g)).dump()
        << ",\"power\":" << pair.power << ",\"report\":" << report_to_json(report) << "}\n";
  } else {
    out << "f=" << to_string(pair.f) << '\n' << "g=" << to_string(pair.g) << '\n' << "power=" << pair.power << '\n';
    out << report_to_text(report);
  }
  return verdict_code(report.pass);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermat-type PDDE solution builder and verifier", "fpdde"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Verify the candidate in a problem file");
  std::string verify_path;
  verify->add_option("file", verify_path, "Problem file")->required();
  PolicyFlags verify_flags;
  verify_flags.attach(verify);
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  auto* construct = app.add_subcommand("construct", "Build a closed-form solution and verify it");
  ConstructArgs cargs;
  construct->add_option("--theorem", cargs.theorem, "t1-i|t1-ii|t2-i|t2-ii|cor1|cor2|equ1|equ2")
      ->required()
      ->check(CLI::IsMember({"t1-i", "t1-ii", "t2-i", "t2-ii", "cor1", "cor2", "equ1", "equ2"}));
  construct->add_option("--n", cargs.n, "Dimension (equ1/equ2: 2)");
  construct->add_option("--c", cargs.shift, "Shift vector as comma-separated constants, e.g. \"0, pi*i, pi*i\"")
      ->required();
  construct->add_option("--g", cargs.g, "Periodic / quasi-periodic part")->required();
  construct->add_option("--phi", cargs.phi, "Right-hand side phi (default 1)");
  construct->add_option("--emit", cargs.emit, "Write the matching problem file here");
  PolicyFlags construct_flags;
  construct_flags.attach(construct);
  construct->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  auto* order = app.add_subcommand("order", "Estimate the growth order of an entire candidate");
  std::string order_target;
  int order_n = 0;
  int directions = 256;
  std::uint64_t order_seed = 42;
  order->add_option("target", order_target, "Problem file or expression")->required();
  order->add_option("--n", order_n, "Dimension when target is an expression");
  order->add_option("--directions", directions, "Random directions per radius");
  order->add_option("--seed", order_seed, "Direction seed");
  order->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  auto* fermat = app.add_subcommand("fermat", "Build a Fermat pair f^k + g^k = 1 and verify it");
  fermat->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  std::string fermat_kind;
  std::string fermat_h;
  int fermat_n = 1;
  fermat->add_option("--kind", fermat_kind, "cos-sin|mobius|cubic")
      ->required()
      ->check(CLI::IsMember({"cos-sin", "mobius", "cubic"}));
  fermat->add_option("--h", fermat_h, "Parametrizing expression")->required();
  fermat->add_option("--n", fermat_n, "Dimension");
  PolicyFlags fermat_flags;
  fermat_flags.attach(fermat);
  fermat->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  const bool machine = format == "machine";
  try {
    if (*verify) return cmd_verify(verify_path, verify_flags, machine, out);
    if (*construct) return cmd_construct(cargs, construct_flags, machine, out);
    if (*order) return cmd_order(order_target, order_n, directions, order_seed, machine, out);
    if (*fermat) return cmd_fermat(fermat_kind, fermat_h, fermat_n, fermat_flags, machine, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  err << "error: no subcommand\n";
  return kExitInputError;
}

}  // namespace fpdde
