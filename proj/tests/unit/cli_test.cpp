#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpdde/cli.hpp"
#include "fpdde/error.hpp"
#include "fpdde/problem_file.hpp"
#include "json.hpp"

using namespace fpdde;

namespace {

const std::filesystem::path kFixtures = FPDDE_FIXTURE_DIR;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(int k) { return (kFixtures / ("example" + std::to_string(k) + ".json")).string(); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fpdde_cli_test_" + name);
}

TEST(Cli, ExitCodesOnTheFixtureCorpus) {
  for (int k : {1, 3, 4, 5, 6, 7}) {
    const CliResult r = run({"verify", fixture(k)});
    EXPECT_EQ(r.code, kExitPass) << fixture(k) << '\n' << r.out << r.err;
    EXPECT_NE(r.out.find("verdict=pass"), std::string::npos);
  }
  const CliResult ex2 = run({"verify", fixture(2)});
  EXPECT_EQ(ex2.code, kExitFail);
  EXPECT_NE(ex2.out.find("expected_status=inconsistent"), std::string::npos);
  EXPECT_EQ(run({"verify", (kFixtures / "bad_poly.json").string()}).code, kExitFail);
}

TEST(Cli, MalformedInputs) {
  const auto path = temp_file("bad.json");
  {
    std::ofstream(path) << "{\"n\": 2, \"kind\": \"fte\", ";
  }
  const CliResult r = run({"verify", path.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
  {
    std::ofstream(path) << R"({"n": 2, "kind": "fte", "c": [[1,0],[0,0]], "phi": "1", "f": "z3"})";
  }
  EXPECT_EQ(run({"verify", path.string()}).code, kExitInputError);
  {
    std::ofstream(path) << R"({"n": 2, "kind": "fte", "c": [[1,0],[0,0]], "phi": "1", "f": "z1", "colour": 1})";
  }
  EXPECT_EQ(run({"verify", path.string()}).code, kExitInputError);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"verify", "/nonexistent/problem.json"}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"construct", "--theorem", "t9", "--c", "1", "--g", "1"}).code, kExitInputError);
}

TEST(Cli, FlagsOverrideFilePolicy) {
  const CliResult r = run({"verify", fixture(4), "--samples", "17", "--seed", "5", "--tol", "1e-6"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("points_tested=17"), std::string::npos);
  EXPECT_NE(r.out.find("seed=5"), std::string::npos);
  EXPECT_NE(r.out.find("tolerance=1e-06"), std::string::npos);
}

TEST(Cli, MachineFormatIsJson) {
  const CliResult r = run({"--format", "machine", "verify", fixture(1)});
  ASSERT_EQ(r.code, kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report"]["verdict"], "pass");
  EXPECT_EQ(j["kind"], "fte");
  EXPECT_EQ(j["report"]["points_tested"], 200);
}

TEST(Cli, ConstructEmitsAVerifiableDocument) {
  const auto path = temp_file("t2.json");
  const CliResult made = run({"construct", "--theorem", "t2-ii", "--n", "3", "--c", "0.5, 1 + i, pi*i", "--g",
                        "exp(2*pi*i*(z2 - z1 + z3)/(0.5 + i + pi*i))", "--phi", "2 + z3", "--emit", path.string()});
  ASSERT_EQ(made.code, kExitPass) << made.out << made.err;
  const CliResult again = run({"verify", path.string()});
  EXPECT_EQ(again.code, kExitPass) << again.out << again.err;

  // The printed f re-parses to the same candidate.
  const ProblemFile pf = load_problem_file(path);
  const auto pos = made.out.find("f=");
  const std::string f_text = made.out.substr(pos + 2, made.out.find('\n', pos) - pos - 2);
  EXPECT_EQ(parse(f_text, 3), *pf.candidate);
  std::filesystem::remove(path);
}

TEST(Cli, ConstructLegacy) {
  EXPECT_EQ(run({"construct", "--theorem", "equ1", "--c", "2, 1", "--g", "sin(2*pi*z2)"}).code, kExitPass);
  EXPECT_EQ(run({"construct", "--theorem", "equ2", "--c", "2, 1", "--g", "cos(2*pi*(z2 - z1))"}).code, kExitPass);
  EXPECT_EQ(run({"construct", "--theorem", "cor1", "--n", "2", "--c", "1, 0", "--g", "1"}).code, kExitInputError);
}

TEST(Cli, FermatAndOrder) {
  EXPECT_EQ(run({"fermat", "--kind", "cos-sin", "--h", "z1*z2", "--n", "2"}).code, kExitPass);
  EXPECT_EQ(run({"fermat", "--kind", "mobius", "--h", "z1", "--radius", "0.9"}).code, kExitPass);
  EXPECT_EQ(run({"fermat", "--kind", "cubic", "--h", "z1"}).code, kExitPass);

  const CliResult o = run({"--format", "machine", "order", "exp(z1 + z2)", "--n", "2"});
  ASSERT_EQ(o.code, kExitPass) << o.err;
  const double order = nlohmann::json::parse(o.out)["order"];
  EXPECT_NEAR(order, 1.0, 0.15);
  const CliResult f1 = run({"order", fixture(1)});
  EXPECT_EQ(f1.code, kExitPass);
  ASSERT_EQ(f1.out.rfind("order=", 0), 0u);
  EXPECT_NEAR(std::stod(f1.out.substr(6)), 2.0, 0.2);
  EXPECT_EQ(run({"order", "exp(z1)"}).code, kExitInputError);  // needs --n
}

TEST(ProblemDocument, WriteThenParseIsExact) {
  const ProblemFile pf = load_problem_file(fixture(5));
  const std::string doc = write_problem_document(pf.problem, *pf.candidate, "pass", "round trip");
  const ProblemFile back = parse_problem_document(doc);
  EXPECT_EQ(*back.candidate, *pf.candidate);
  EXPECT_EQ(back.problem.shift, pf.problem.shift);
  EXPECT_EQ(back.problem.kind, pf.problem.kind);
  EXPECT_EQ(write_problem_document(back.problem, *back.candidate, "pass", "round trip"), doc);
}

}  // namespace
