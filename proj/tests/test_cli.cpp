#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "goi/interpret.hpp"
#include "goi/json_io.hpp"

using namespace goi;

namespace {

const std::string kProofs = std::string(GOI_SOURCE_DIR) + "/tests/proofs/";

struct Run {
  int code = -1;
  std::string out;
};

// Runs the command line tool, stdout and stderr merged.
Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(GOI_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / ("goi_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("prop runs a seeded battery") {
  Run r = run("prop trefoil --iters 1000 --seed 42");
  CHECK(r.code == 0);
  CHECK(has(r.out, "1000/1000 exact"));
  Run again = run("prop trefoil --iters 1000 --seed 42");
  CHECK(again.out == r.out);
  Run j = run("prop assoc --iters 20 --format json");
  CHECK(j.code == 0);
  CHECK(json::parse(j.out).at("ok") == true);
}

TEST_CASE("check and verify") {
  Run ok = run("check " + kProofs + "axiom.gl");
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "(var 0 1)"));
  Run bad = run("verify " + kProofs + "ctr_on_nonbehavior.gl");
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "ctr (B Behavior)"));
  CHECK(run("check " + kProofs + "forall_capture.gl").code == 1);
  Run with = run("verify " + kProofs + "with.gl --format json");
  CHECK(with.code == 0);
  auto j = json::parse(with.out);
  CHECK(j.at("uses_with") == true);
  CHECK(j.at("success") == "weak");
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frob").code == 2);
  CHECK(run("prop nonsense").code == 2);
  CHECK(run("check " + kProofs + "missing.gl").code == 2);
  CHECK(run("interpret " + kProofs + "axiom.gl --format yaml").code == 2);
  CHECK(run("prop trefoil --iters many").code == 2);
}

TEST_CASE("interpret, exec and export round trip through JSON") {
  auto dir = scratch();
  std::string a = (dir / "a.json").string(), b = (dir / "b.json").string(), c = (dir / "c.json").string();
  std::string bgl = (dir / "b.gl").string();
  std::ofstream(bgl) << "(ax 0 1 2)\n";
  REQUIRE(run("interpret " + kProofs + "axiom.gl -o " + a).code == 0);
  REQUIRE(run("interpret " + bgl + " -o " + b).code == 0);
  REQUIRE(run("exec " + a + " " + b + " -o " + c).code == 0);

  std::ifstream in(c);
  Project got = project_from_json(json::parse(in));
  Project want = interpret(*load_proof(kProofs + "cut_axioms.gl"));
  CHECK(project_ae_equal(got, want));

  Run dot = run("export " + c + " --format dot");
  CHECK(dot.code == 0);
  CHECK(has(dot.out, "digraph"));

  // Without enough fuel the resource error is reported, not approximated.
  Run starved = run("exec " + a + " " + a + " --fuel 0");
  CHECK(starved.code == 2);
  CHECK(has(starved.out, "fuel=0"));
  std::filesystem::remove_all(dir);
}
