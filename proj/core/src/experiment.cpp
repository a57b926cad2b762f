// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace bbspectra {

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp);
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

int worker_thread_cap() {
  if (const char* env = std::getenv("BBSPECTRA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<std::string> run_ordered(const std::vector<std::function<std::string()>>& jobs) {
  const int workers = std::min<int>(worker_thread_cap(), static_cast<int>(jobs.size()));
  std::vector<std::string> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) break;
        try {
          results[i] = jobs[i]();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

void write_manifest(const std::string& path, const std::string& config_echo,
                    const std::string& hash, double wall_seconds,
                    const std::vector<ManifestEntry>& artifacts) {
  nlohmann::json j;
  j["config"] = config_echo;
  j["config_hash"] = hash;
  j["tool_version"] = kToolVersion;
  j["wall_seconds"] = wall_seconds;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : artifacts) arr.push_back({{"kind", a.kind}, {"path", a.path}});
  j["artifacts"] = arr;
  atomic_write_file(path, j.dump(2) + "\n");
}

}  // namespace bbspectra
