#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc_cli.hpp"

#include "qcdense/parse.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

using namespace qcdense;
using Json = nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  Json report;
  std::string stderr_text;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  CliResult r{code, Json(), err.str()};
  if (!out.str().empty() && out.str().front() == '{') {
    r.report = Json::parse(out.str());
  }
  return r;
}

// Byte-identical reports modulo the timing field.
std::string normalized(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  cli::run(args, out, err);
  Json j = Json::parse(out.str());
  j.erase("timing_ms");
  return j.dump();
}

}  // namespace

TEST_CASE("exit code contract") {
  CHECK(invoke({"hull", "--group", "Z4", "--set", "(1)"}).exit_code == 0);
  CHECK(invoke({"dense", "--group", "Z8", "--set", "(0),(1),(2)"}).exit_code == 1);
  CHECK(invoke({"dense", "--group", "Z8", "--set", "(0),(1),(2),(3)"}).exit_code ==
        0);
  CHECK(invoke({"hull", "--group", "banana", "--set", "(1)"}).exit_code == 2);
  CHECK(invoke({"hull", "--group", "Z4"}).exit_code == 2);       // missing --set
  CHECK(invoke({"frobnicate"}).exit_code == 2);                  // no such verb
  CHECK(invoke({"dense", "--set", "(1)"}).exit_code == 2);       // no context
  CHECK(invoke({"dense", "--group", "Z4", "--model", "T", "--set", "(1)"})
            .exit_code == 2);
}

TEST_CASE("worked examples through the CLI") {
  CliResult hull = invoke({"hull", "--group", "Z4", "--set", "(1)"});
  CHECK(hull.report["result"]["hull"] == Json::array({"(0)", "(1)", "(3)"}));

  CliResult dense = invoke({"dense", "--group", "Z8", "--set", "(0),(1),(2)"});
  CHECK(dense.report["result"]["counterexample"] == "(1)");

  CliResult wset = invoke(
      {"wset", "--group", "Z8", "--set", "(1)", "--arc", "1/8"});
  CHECK(wset.report["result"]["w_set"] == Json::array({"(0)"}));

  CliResult ms = invoke(
      {"min-sumset", "--group", "Z8", "--set", "(1)", "--arc", "1/8"});
  CHECK(ms.exit_code == 0);
  CHECK(ms.report["result"]["n"] == 3);
  CHECK(ms.report["result"]["v_n_bound"] == 3);

  CliResult fan = invoke({"fan", "--group", "Z4xZ3", "--sets", "(1),(2);(1)"});
  CHECK(fan.exit_code == 0);
  CHECK(fan.report["result"]["qc_dense"] == true);
  CHECK(fan.report["result"]["fan"].size() == 4);

  CliResult search = invoke({"search", "min-dense", "--group", "Z3"});
  CHECK(search.report["result"]["min_size"] == 1);
  CHECK(search.report["result"]["classes"][0]["representative"] ==
        Json::array({"(1)"}));

  CliResult near = invoke({"near-char", "--group", "Z4", "--set", "(2)"});
  CHECK(near.exit_code == 0);  // equivalence holds (both sides false)
  CHECK(near.report["result"]["w_trivial_for_some_arc"] == false);
  CHECK(near.report["result"]["restriction_injective"] == false);

  CliResult det = invoke(
      {"determine", "--group", "Z12", "--subgroup", "(0),(6)"});
  CHECK(det.exit_code == 1);
  CHECK(det.report["result"]["determines"] == false);
}

TEST_CASE("three-space via homomorphism JSON") {
  CliResult r = invoke({"three-space", "--hom",
                        R"({"source":"Z4","target":"Z2","matrix":[[1]]})",
                        "--set", "(1),(2)"});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["biconditional_holds"] == true);

  CliResult bad = invoke({"three-space", "--hom",
                          R"({"source":"Z3","target":"Z2","matrix":[[1]]})",
                          "--set", "(1)"});
  CHECK(bad.exit_code == 2);  // not well-defined

  // the @file form
  {
    std::ofstream out("hom_cli_test.json");
    out << R"({"source":"Z4","target":"Z2","matrix":[[1]]})";
  }
  CliResult from_file = invoke(
      {"three-space", "--hom", "@hom_cli_test.json", "--set", "(1),(2)"});
  CHECK(from_file.exit_code == 0);
  std::remove("hom_cli_test.json");
  CHECK(invoke({"three-space", "--hom", "@no_such_file.json", "--set", "(1)"})
            .exit_code == 2);
}

TEST_CASE("search cap needs an explicit opt-in to the heuristic") {
  CHECK(invoke({"search", "min-dense", "--group", "Z30"}).exit_code == 2);
  CliResult beam = invoke(
      {"search", "min-dense", "--group", "Z30", "--heuristic"});
  CHECK(beam.exit_code == 0);
  CHECK(beam.report["result"]["heuristic"] == true);
}

TEST_CASE("witness commands label their bounds") {
  CliResult torus = invoke(
      {"witness", "torus", "--seq-len", "12", "--char-bound", "12"});
  CHECK(torus.exit_code == 0);
  CHECK(torus.report["certificates"].size() == 24);
  CHECK(torus.report["bound"]["char_bound"] == 12);
  for (const auto& cert : torus.report["certificates"]) {
    // exhaustive witnesses land anywhere outside T_+
    Rat v = parse_rational(cert["value"].get<std::string>());
    CHECK(abs(v) > Rat(1, 4));
  }

  CliResult zp = invoke(
      {"witness", "zp", "--model", "Zp(3)", "--levels", "2"});
  CHECK(zp.exit_code == 0);
  CHECK(zp.report["bound"]["levels"] == 2);

  CliResult qhat = invoke({"witness", "qhat", "--height", "5", "--seq-len", "5",
                           "--prime-max", "5", "--levels", "3"});
  CHECK(qhat.exit_code == 0);
  CHECK(qhat.report["bound"]["height"] == 5);

  CliResult fan = invoke({"witness", "fan", "--model", "prod(T,Zp(2))",
                          "--seq-len", "6", "--levels", "3", "--char-bound",
                          "6"});
  CHECK(fan.exit_code == 0);

  // model dense carries the bound too
  CliResult md = invoke({"dense", "--model", "T", "--set", "1/2,1/4,1/6",
                         "--char-bound", "3"});
  CHECK(md.exit_code == 0);
  CHECK(md.report["result"]["exact"] == false);
  CHECK(md.report["bound"]["char_bound"] == 3);

  CliResult mfail = invoke({"dense", "--model", "T", "--set", "1/3",
                            "--char-bound", "3"});
  CHECK(mfail.exit_code == 1);
  CHECK(mfail.report["result"]["counterexample"] == "-3");
}

TEST_CASE("reports are deterministic modulo timing") {
  std::vector<std::string> args{"witness", "torus", "--seq-len", "9",
                                "--char-bound", "9"};
  CHECK(normalized(args) == normalized(args));
  std::vector<std::string> threaded{"witness", "torus", "--seq-len", "9",
                                    "--char-bound", "9", "--threads", "4"};
  CHECK(normalized(args) == normalized(threaded));

  std::vector<std::string> th1{"experiment", "theorem1", "--dim", "2", "--set",
                               "(1/6,0),(0,1/10)", "--arc", "1/4",
                               "--schedule", "5,25"};
  std::vector<std::string> th1t = th1;
  th1t.push_back("--threads");
  th1t.push_back("3");
  CHECK(normalized(th1) == normalized(th1t));
}

TEST_CASE("echoed inputs re-parse to the same values") {
  CliResult hull = invoke({"hull", "--group", "Z4xZ9", "--set", "(1, 0),(2,7)"});
  FiniteAbelianGroup g = parse_group(hull.report["inputs"]["group"]);
  CHECK(g == FiniteAbelianGroup({4, 9}));
  for (const auto& item : hull.report["inputs"]["set"]) {
    GroupElement e = parse_element(g, item.get<std::string>());
    CHECK(element_to_string(e) == item.get<std::string>());
  }

  CliResult md = invoke({"dense", "--model", "prod(T,Zp(5))", "--set",
                         "(1/2, 5),(0,1)", "--char-bound", "2", "--levels",
                         "1"});
  CompactModel m = parse_model(md.report["inputs"]["model"]);
  CHECK(m == CompactModel::product(
                 {CompactModel::torus(), CompactModel::p_adic(5)}));
  for (const auto& item : md.report["inputs"]["set"]) {
    ModelPoint p = parse_point(m, item.get<std::string>());
    CHECK(model_point_to_string(p) == item.get<std::string>());
  }
}

TEST_CASE("build-seq on both kinds of context") {
  CliResult fin = invoke({"build-seq", "--group", "Z4xZ3"});
  CHECK(fin.exit_code == 0);
  CHECK(fin.report["result"]["exact"] == true);
  CHECK(fin.report["result"]["qc_dense"] == true);

  CliResult mod = invoke({"build-seq", "--model", "prod(T,Zp(3))", "--seq-len",
                          "8", "--levels", "2", "--char-bound", "8"});
  CHECK(mod.exit_code == 0);
  CHECK(mod.report["result"]["qc_dense_up_to_bound"] == true);
  CHECK(mod.report.contains("bound"));
}

TEST_CASE("determine on a model uses the witness route") {
  CliResult r = invoke({"determine", "--model", "Zp(2)", "--levels", "4"});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["determines_up_to_bound"] == true);
  CHECK(r.report["result"]["label"].get<std::string>().find("up to") !=
        std::string::npos);
}

TEST_CASE("csv emission") {
  std::string path = "theorem1_cli_test.csv";
  CliResult r = invoke({"experiment", "theorem1", "--dim", "1", "--set",
                        "(1/2)", "--arc", "1/4", "--schedule", "4,8", "--csv",
                        path});
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "M,count,fraction");
  CHECK(row1 == "4,5,5/9");    // even chi in [-4,4]
  CHECK(row2 == "8,9,9/17");
  std::remove(path.c_str());
}
