/*
   Copyright 2026 the bpverify developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// End-to-end exercises of the installed CLI binary: exit-code contract,
// output formats, suite handling. The binary path arrives through the
// BPVERIFY_CLI environment variable (set by the test harness).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* env = std::getenv("BPVERIFY_CLI");
  REQUIRE_MESSAGE(env != nullptr, "BPVERIFY_CLI must point at the CLI binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << contents;
  out.close();
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("constants subcommand") {
  auto r = run_cli("constants --n 3 --k 1 --q 1 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("12.56637061435917") != std::string::npos);  // 4 pi

  r = run_cli("constants --n 2 --k 2 --q 1 --format csv");
  CHECK(r.exit_code == 0);
  // bp_affine_constant = 1 at k = n (last column)
  CHECK(r.output.find(",1.0\n") != std::string::npos);

  r = run_cli("constants --frobnicate");
  CHECK(r.exit_code == 2);

  r = run_cli("constants --n 1 --k 2 --q 3");
  CHECK(r.exit_code == 2);  // no valid triple in range
}

TEST_CASE("verify subcommand exit codes") {
  auto r = run_cli("verify bp --n 2 --k 1 --q 1 --f gaussian:a=1 --samples 50000 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);

  // ordering violation is a usage error
  r = run_cli("verify bp --n 2 --k 3 --q 1");
  CHECK(r.exit_code == 2);

  // a perturbed constant must fail cleanly (exit 1)
  r = run_cli(
      "verify bp --n 3 --k 2 --q 1 --samples 200000 --seed 7 --constant-scale 1.05 "
      "--format human");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL") != std::string::npos);

  // unsupported configuration names the paths and exits 2
  r = run_cli("verify multilinear --n 2 --k 1 --q 1 --f ball:R=1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("Gaussian") != std::string::npos);

  r = run_cli("verify nosuch --n 2");
  CHECK(r.exit_code == 2);

  // samples below the floor
  r = run_cli("verify bp --n 2 --k 1 --q 1 --samples 10");
  CHECK(r.exit_code == 2);
}

TEST_CASE("seed environment variable") {
  const std::string args =
      "verify bp --n 2 --k 1 --q 1 --samples 50000 --format json --no-timestamp";
  auto with_flag = run_cli(args + " --seed 123");
  const std::string cmd_env = "BPVERIFY_SEED=123 " + cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd_env.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string env_output;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) env_output.append(buf, got);
  pclose(pipe);
  CHECK(with_flag.output == env_output);
}

TEST_CASE("reports are byte-identical across workers and reruns") {
  const auto out1 = std::filesystem::temp_directory_path() / "bpv_cli_rep1.json";
  const auto out2 = std::filesystem::temp_directory_path() / "bpv_cli_rep2.json";
  const std::string base =
      "verify drury --n 2 --k 1 --ell 0 --samples 100000 --seed 9 --format json --no-timestamp";
  auto r1 = run_cli(base + " --workers 1 --out " + out1.string());
  auto r2 = run_cli(base + " --workers 4 --out " + out2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST_CASE("suite subcommand") {
  const auto good = temp_file("bpv_good.suite",
                              "# smoke battery\n"
                              "[constants]\n"
                              "[siegel-quadrature]\n"
                              "  k = 1\n"
                              "  alpha = 1 2\n"
                              "[verify]\n"
                              "  identity = bp\n"
                              "  n = 2\n"
                              "  k = 1\n"
                              "  q = 1\n"
                              "  samples = 50000\n"
                              "  seed = 5\n");
  auto r = run_cli("suite " + good.string() + " --format human");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);

  // aggregate json carries per-entry reports and the overall verdict
  r = run_cli("suite " + good.string() + " --format json --no-timestamp");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"pass\": true") != std::string::npos);
  CHECK(r.output.find("\"kind\": \"verify\"") != std::string::npos);
  CHECK(r.output.find("\"failed\": 0") != std::string::npos);

  const auto failing = temp_file("bpv_fail.suite",
                                 "[verify]\n"
                                 "identity = bp\n"
                                 "n = 3\n"
                                 "k = 2\n"
                                 "q = 1\n"
                                 "samples = 200000\n"
                                 "seed = 5\n"
                                 "constant_scale = 1.05\n");
  r = run_cli("suite " + failing.string());
  CHECK(r.exit_code == 1);

  const auto empty = temp_file("bpv_empty.suite", "# nothing here\n");
  r = run_cli("suite " + empty.string());
  CHECK(r.exit_code == 2);

  const auto broken = temp_file("bpv_broken.suite", "[verify]\nidentity bp\n");
  r = run_cli("suite " + broken.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 2") != std::string::npos);

  r = run_cli("suite /does/not/exist.suite");
  CHECK(r.exit_code == 2);

  std::filesystem::remove(good);
  std::filesystem::remove(failing);
  std::filesystem::remove(empty);
  std::filesystem::remove(broken);
}
