// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bbspectra/experiment.hpp"

using namespace bbspectra;

TEST_CASE("config hash is stable and input-sensitive") {
  const std::string a = config_hash("limit dim=2 mbar=1");
  CHECK(a == config_hash("limit dim=2 mbar=1"));
  CHECK(a != config_hash("limit dim=2 mbar=2"));
  CHECK(a.size() == 16);
}

TEST_CASE("17-digit serialization round-trips") {
  for (double v : {1.0 / 3.0, 8.190277132365617, 1e-300, -0.0, 2.5}) {
    const std::string s = format_double17(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("atomic write replaces content completely") {
  const std::string path = "/tmp/bbspectra_atomic_test.txt";
  atomic_write_file(path, "first version with some length\n");
  atomic_write_file(path, "v2\n");
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str() == "v2\n");
  std::remove(path.c_str());
}

TEST_CASE("worker pool preserves input order and honors the thread cap") {
  setenv("BBSPECTRA_THREADS", "3", 1);
  std::vector<std::function<std::string()>> jobs;
  for (int i = 0; i < 17; ++i)
    jobs.push_back([i]() -> std::string {
      // Uneven workloads so completion order differs from input order.
      volatile double x = 0.0;
      for (int k = 0; k < (17 - i) * 20000; ++k) x += 1.0 / (k + 1);
      return "job" + std::to_string(i);
    });
  const auto results = run_ordered(jobs);
  REQUIRE(results.size() == 17);
  for (int i = 0; i < 17; ++i) CHECK(results[i] == "job" + std::to_string(i));
  unsetenv("BBSPECTRA_THREADS");
}

TEST_CASE("worker pool rethrows job failures") {
  std::vector<std::function<std::string()>> jobs;
  jobs.push_back([]() -> std::string { return "ok"; });
  jobs.push_back([]() -> std::string { throw std::runtime_error("boom"); });
  CHECK_THROWS_WITH_AS(run_ordered(jobs), "boom", std::runtime_error);
}

TEST_CASE("manifest json carries the required fields") {
  const std::string path = "/tmp/bbspectra_manifest_test.json";
  write_manifest(path, "modes lmax=6", "deadbeefdeadbeef", 1.25,
                 {{"mode_table", "/tmp/x.csv"}});
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string s = ss.str();
  CHECK(s.find("\"config_hash\": \"deadbeefdeadbeef\"") != std::string::npos);
  CHECK(s.find("\"tool_version\"") != std::string::npos);
  CHECK(s.find("\"artifacts\"") != std::string::npos);
  std::remove(path.c_str());
}
