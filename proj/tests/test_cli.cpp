#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SYMQM_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, p))
    r.output.append(buf, got);
  int rc = pclose(p);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("basis") {
  RunResult r = run("basis --n 3 --ncut 6");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"dimension\":7") != std::string::npos);
  CHECK(count_lines(run("basis --n 3 --ncut 6 --format csv").output) == 7);
  CHECK(count_lines(run("basis --n 2 --ncut 0 --format csv").output) == 1);
  CHECK(run("basis --n 1 --ncut 4").code == 2);
  CHECK(run("basis --n 2").code == 2);  // --ncut is required
}

TEST_CASE("gram") {
  RunResult r = run("gram --n 2 --ncut 4");
  CHECK(r.code == 0);
  // exact fractions as strings
  CHECK(r.output.find("\"3/2\"") != std::string::npos);
}

TEST_CASE("spectrum") {
  RunResult r = run("spectrum --n 4 --ncut 0 --method closed --format csv");
  CHECK(r.code == 0);
  CHECK(r.output.find("3.75,") != std::string::npos);

  r = run("spectrum --n 3 --ncut 6 --method both");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"match\":true") != std::string::npos);

  r = run("spectrum --n 2 --ncut 8 --method numeric --format csv");
  CHECK(r.code == 0);
  CHECK(r.output.rfind("index,E,multiplicity", 0) == 0);

  // fermionic sector without brick data
  r = run("spectrum --n 3 --ncut 4 --sector 1 --method closed");
  CHECK(r.code == 1);
  CHECK(r.output.find("brick data unavailable") != std::string::npos);

  // sectors reachable through the automatic pure fermionic bricks
  CHECK(run("spectrum --n 3 --ncut 4 --sector 3 --method closed").code == 0);

  // numeric diagonalization covers the cut bosonic sector only
  CHECK(run("spectrum --n 3 --ncut 4 --sector 3 --method both").code == 2);
}

TEST_CASE("spectrum with a brick table") {
  fs::path table = fs::temp_directory_path() / "symqm_test_table.json";
  std::ofstream(table) << "{\"N\":3,\"nF\":1,\"bricks\":[{\"alpha\":0,\"nB\":2}]}";
  RunResult r = run("spectrum --n 3 --ncut 6 --method closed --brick-table " +
                    table.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("\"nB\":2") != std::string::npos);
  // table rank must match --n
  CHECK(run("spectrum --n 4 --ncut 6 --method closed --brick-table " +
            table.string())
            .code == 2);
  fs::remove(table);
}

TEST_CASE("state") {
  RunResult r = run("state --n 3 --ncut 6 --family 2 --root 0");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"residual\":") != std::string::npos);
  CHECK(r.output.find("\"coeffs\":[") != std::string::npos);

  CHECK(run("state --n 3 --ncut 6 --family 0 --dress 3").output.find(
            "\"nF\":3") != std::string::npos);
  CHECK(run("state --n 3 --ncut 6 --family 2,0 --root 0").code == 2);
  CHECK(run("state --n 3 --ncut 6 --family 0 --energy 0.123").code == 2);
  CHECK(run("state --n 3 --ncut 2 --family 0 --root 5").code == 2);
  RunResult c = run("state --n 3 --ncut 0 --family 0 --method continuum "
                    "--energy 0.8");
  CHECK(c.code == 0);
  CHECK(c.output.find("\"residual\":null") != std::string::npos);
}

TEST_CASE("families") {
  RunResult r = run("families --n 4 --ncut 6 --format csv");
  CHECK(r.code == 0);
  CHECK(count_lines(r.output) == 5);  // header + 4 towers
  CHECK(r.output.find("tail,nB,alpha,levels,gamma") == 0);
}

TEST_CASE("verify") {
  RunResult r = run("verify --suite appendix");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"pass\":true") != std::string::npos);
  CHECK(run("verify --suite nonsense").code == 2);
}

TEST_CASE("apply prints reduced expressions") {
  CHECK(run("apply --n 3 --p 1,0 --op lowering").output == "4\n");
  RunResult r = run("apply --n 3 --p 2,0");
  CHECK(r.code == 0);
  CHECK(r.output.find("(A2)(A2)") != std::string::npos);
  CHECK(run("apply --n 3 --p 1,0,0").code == 2);
}

TEST_CASE("repeat runs are byte-identical") {
  std::string a = run("spectrum --n 3 --ncut 8 --method both").output;
  std::string b = run("spectrum --n 3 --ncut 8 --method both").output;
  CHECK(a == b);
}

TEST_CASE("cache: warm equals cold, env var overrides the flag") {
  fs::path dir = fs::temp_directory_path() / "symqm_test_cache";
  fs::remove_all(dir);
  std::string cold =
      run("gram --n 3 --ncut 6 --cache-dir " + dir.string()).output;
  CHECK(fs::exists(dir / "gram-n3-c6-json-v1"));
  std::string warm =
      run("gram --n 3 --ncut 6 --cache-dir " + dir.string()).output;
  CHECK(cold == warm);
  CHECK(cold == run("gram --n 3 --ncut 6").output);

  fs::path envDir = fs::temp_directory_path() / "symqm_test_cache_env";
  fs::remove_all(envDir);
  RunResult r = run("basis --n 2 --ncut 4 --cache-dir " + dir.string());
  std::string cmd = "SYMQM_CACHE=" + envDir.string() + " " +
                    std::string(SYMQM_CLI) + " basis --n 2 --ncut 4 --cache-dir " +
                    dir.string() + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(envDir / "basis-n2-c4-json-v1"));
  fs::remove_all(dir);
  fs::remove_all(envDir);
}
