#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using std::string;

namespace {

struct CliResult {
  int exit_code;
  string out;
};

CliResult run_cli(const string& args) {
  string cmd = string(QSC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("code params on the d = 3 torus") {
  CliResult r = run_cli("code params --builder torus --m 2 --d 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"n\":8") != string::npos);
  CHECK(r.out.find("\"code_dim\":9") != string::npos);
  CHECK(r.out.find("\"generator_rank\":6") != string::npos);
}

TEST_CASE("homology of the cube surface") {
  CliResult r = run_cli("homology --builder sphere-cube --d 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"rank_h1\":0") != string::npos);
  CHECK(r.out.find("\"class_count\":1") != string::npos);
}

TEST_CASE("exact interferometer reproduces the pinned expectation") {
  CliResult r = run_cli("protocol interfere --d 2 --probe 0,1 --target 1,0 --chi 0 --exact");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"sigma_x_tau\":-0.5") != string::npos);
  CHECK(r.out.find("\"sigma_x_one\":0.5") != string::npos);
}

TEST_CASE("outputs replay byte for byte under a fixed seed") {
  string args = "protocol interfere --d 3 --probe 1,0 --target 0,1 --chi 0.25 --shots 500 --seed 21";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  string g = "ground degeneracy --builder torus --m 2 --d 3 --seed 5";
  CliResult c = run_cli(g);
  CliResult d2 = run_cli(g);
  CHECK(c.exit_code == 0);
  CHECK(c.out == d2.out);
  CHECK(c.out.find("\"dense_dimension\":9") != string::npos);
}

TEST_CASE("complex files round trip through the CLI") {
  string path = "/tmp/qsc_cli_test_complex.json";
  CliResult built = run_cli("complex build --builder disk --style frame --k 2 --d 3 -o " + path);
  CHECK(built.exit_code == 0);

  CliResult validated = run_cli("complex validate -i " + path);
  CHECK(validated.exit_code == 0);
  CHECK(validated.out.find("\"valid\":true") != string::npos);
  CHECK(validated.out.find("\"punctures\":2") != string::npos);

  CliResult hom = run_cli("homology -i " + path);
  CHECK(hom.exit_code == 0);
  CHECK(hom.out.find("\"rank_h1\":2") != string::npos);

  // parse -> serialize -> parse is idempotent.
  string path2 = "/tmp/qsc_cli_test_complex2.json";
  CliResult rebuilt = run_cli("complex build -i " + path + " -o " + path2);
  CHECK(rebuilt.exit_code == 0);
  std::ifstream f1(path), f2(path2);
  string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("dual via the CLI") {
  CliResult r = run_cli("complex dual --builder honeycomb --rows 2 --cols 2 --d 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"mode\":\"closed\"") != string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("malformed input file gives the parse exit code") {
    string path = "/tmp/qsc_cli_bad.json";
    std::ofstream(path) << "{not json";
    CliResult r = run_cli("complex validate -i " + path);
    CHECK(r.exit_code == 4);
    std::remove(path.c_str());
  }

  SUBCASE("amplitude cap gives the resource exit code") {
    CliResult r = run_cli("ground degeneracy --builder torus --m 2 --d 5 --cap 1000");
    CHECK(r.exit_code == 3);
  }

  SUBCASE("invalid complex gives the validation exit code") {
    string path = "/tmp/qsc_cli_invalid.json";
    std::ofstream(path) << R"({"field":{"d":2,"ell":1},"vertices":["v0","v1"],
      "edges":[{"id":"e0","from":"v0","to":"v1"}],
      "faces":[{"id":"f0","boundary":[["e0",1]]}],"mode":"closed"})";
    CliResult r = run_cli("complex validate -i " + path);
    CHECK(r.exit_code == 2);
    std::remove(path.c_str());
  }

  SUBCASE("braid subcommand agrees across routes") {
    CliResult r = run_cli("protocol braid --process wind --d 5 --labels 2,1 --labels2 1,3");
    CHECK(r.exit_code == 0);
    // a'b + b'a = 1*1 + 3*2 = 7 = 2 mod 5
    CHECK(r.out.find("\"symbolic_exponent\":2") != string::npos);
    CHECK(r.out.find("\"dense_exponent\":2") != string::npos);
  }

  SUBCASE("store and retrieve round trip") {
    CliResult r = run_cli(
        "protocol retrieve --builder torus --m 2 --d 3 --alpha 0.6,0:0.8,0 --winding 1,0 --seed 9");
    CHECK(r.exit_code == 0);
    auto near_one = [&](const string& key) {
      auto pos = r.out.find("\"" + key + "\":");
      REQUIRE(pos != string::npos);
      double v = std::stod(r.out.substr(pos + key.size() + 3));
      return std::abs(v - 1.0) < 1e-9;
    };
    CHECK(near_one("round_trip_fidelity"));
    CHECK(near_one("fidelity_vs_projector"));
  }
}
