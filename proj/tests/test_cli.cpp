// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Drives the installed CLI binary end to end: flag validation, artifact
// shape, byte-level determinism of reruns.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(BBSPECTRA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void shell(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc == 0);
}

std::string tmpdir(const std::string& tag) {
  const std::string d = "/tmp/bbspectra_cli_" + tag;
  shell("rm -rf " + d);
  return d;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("limit --dim 2 --mbar 1").exit_code == 2);        // missing --munder
  CHECK(run("limit --dim 5 --mbar 1 --munder 1").exit_code == 2);
  CHECK(run("modes --lmax 0").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("optimize --domain hexagon:1 --eps 0.01").exit_code == 2);
  CHECK(run("").exit_code == 2);  // subcommand required
}

TEST_CASE("limit run writes profile and summary with the expected eigenvalue") {
  const std::string d = tmpdir("limit");
  const RunResult r = run("limit --dim 2 --mbar 1 --munder 1 --out " + d);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lambda0 = 8.190277132") != std::string::npos);
  const std::string summary = slurp(d + "/limit_summary.json");
  CHECK(summary.find("\"lambda0\": 8.190277132") != std::string::npos);
  CHECK(summary.find("config_hash") != std::string::npos);
  const std::string profile = slurp(d + "/profile.csv");
  CHECK(profile.substr(0, 4) == "r,w\n");
  CHECK(slurp(d + "/manifest.json").find("\"tool_version\"") != std::string::npos);
}

TEST_CASE("limit rejects truncation below the unit ball radius") {
  CHECK(run("limit --dim 2 --mbar 1 --munder 1 --R 0.3").exit_code == 2);
}

TEST_CASE("modes output is strictly decreasing and bytewise reproducible") {
  const std::string d1 = tmpdir("modes1");
  const std::string d2 = tmpdir("modes2");
  CHECK(run("modes --lmax 6 --out " + d1).exit_code == 0);
  CHECK(run("modes --lmax 6 --out " + d2).exit_code == 0);
  const std::string csv = slurp(d1 + "/modes.csv");
  CHECK(csv == slurp(d2 + "/modes.csv"));
  CHECK(slurp(d1 + "/modes_summary.json") == slurp(d2 + "/modes_summary.json"));

  // Parse the g_r0 column and check the ordering.
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // hash comment
  std::getline(is, line);  // header
  double prev = 1e300;
  int rows = 0;
  while (std::getline(is, line)) {
    const auto p = line.rfind(',');
    const double g = std::stod(line.substr(p + 1));
    CHECK(g < prev);
    prev = g;
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("config file values are read and flags override them") {
  const std::string d = tmpdir("config");
  shell("mkdir -p /tmp/bbspectra_cli_config");
  {
    std::ofstream os("/tmp/bbspectra_cli_config/run.toml");
    os << "[modes]\nlmax = 3\nmbar = 1.0\n";
  }
  const RunResult base =
      run("--config /tmp/bbspectra_cli_config/run.toml modes --out " + d + "/a");
  CHECK(base.exit_code == 0);
  std::istringstream is(slurp(d + "/a/modes.csv"));
  std::string line;
  int rows = -2;  // discount comment + header
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);

  const RunResult over =
      run("--config /tmp/bbspectra_cli_config/run.toml modes --lmax 5 --out " + d + "/b");
  CHECK(over.exit_code == 0);
  std::istringstream is2(slurp(d + "/b/modes.csv"));
  rows = -2;
  while (std::getline(is2, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("optimize produces mask and diagnostics with one component") {
  const std::string d = tmpdir("opt");
  const RunResult r =
      run("optimize --domain disk:1.0 --eps 0.01 --grid 160 --out " + d);
  CHECK(r.exit_code == 0);
  const std::string diag = slurp(d + "/diagnostics.json");
  CHECK(diag.find("\"components\": 1") != std::string::npos);
  CHECK(diag.find("\"strict_local_maxima\": 1") != std::string::npos);
  const std::string pgm = slurp(d + "/mask.pgm");
  CHECK(pgm.substr(0, 3) == "P5\n");
  CHECK(slurp(d + "/trace.csv").find("iteration,lambda,cells_changed") != std::string::npos);
}

TEST_CASE("sweep table carries decreasing scaled eigenvalues") {
  const std::string d = tmpdir("sweep");
  const RunResult r =
      run("sweep --domain ellipse:1.0,0.6 --eps 0.08,0.04,0.02 --grid 192 --out " + d);
  CHECK(r.exit_code == 0);
  std::istringstream is(slurp(d + "/sweep.csv"));
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  double prev = 1e300;
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // eps
    std::getline(ls, cell, ',');  // gridres
    std::getline(ls, cell, ',');  // lambda
    std::getline(ls, cell, ',');  // scaled
    const double scaled = std::stod(cell);
    CHECK(scaled < prev);
    prev = scaled;
    ++rows;
  }
  CHECK(rows == 3);
  CHECK(slurp(d + "/sweep_summary.json").find("gap_fit") != std::string::npos);
}

TEST_CASE("asymmetry: zero amplitude gives an exactly zero gap record") {
  const std::string d = tmpdir("asym0");
  const RunResult r = run("asymmetry --mode 2 --amps 0 --grid 640 --rdecay 6 --out " + d);
  CHECK(r.exit_code == 0);
  const std::string rec = slurp(d + "/asymmetry_records.json");
  CHECK(rec.find("\"gap\": 0.0") != std::string::npos);
}

TEST_CASE("asymmetry: amplitude past r0/2 surfaces the normalization error") {
  const RunResult r = run("asymmetry --mode 2 --amps 0.45 --grid 640 --rdecay 6");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("amplitude too large") != std::string::npos);
}

TEST_CASE("verify --quick runs the reduced battery quickly") {
  const std::string d = tmpdir("verify");
  const RunResult r = run("verify --quick --out " + d);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS] 1 ") != std::string::npos);
  CHECK(r.output.find("[PASS] 4 ") != std::string::npos);
  CHECK(r.output.find("[SKIPPED] 5 ") != std::string::npos);
  CHECK(slurp(d + "/verify_report.json").find("\"criteria\"") != std::string::npos);
}

TEST_CASE("identical configs give identical artifact bytes") {
  const std::string d1 = tmpdir("det1");
  const std::string d2 = tmpdir("det2");
  CHECK(run("optimize --domain disk:1.0 --eps 0.02 --grid 128 --out " + d1).exit_code == 0);
  CHECK(run("optimize --domain disk:1.0 --eps 0.02 --grid 128 --out " + d2).exit_code == 0);
  CHECK(slurp(d1 + "/diagnostics.json") == slurp(d2 + "/diagnostics.json"));
  CHECK(slurp(d1 + "/mask.pgm") == slurp(d2 + "/mask.pgm"));
  CHECK(slurp(d1 + "/trace.csv") == slurp(d2 + "/trace.csv"));
}
