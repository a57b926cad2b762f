// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_EXPERIMENT_HPP
#define BBSPECTRA_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bbspectra {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit hash of a canonical config string, hex-encoded.
std::string config_hash(const std::string& canonical);

/// Serializes a double with 17 significant digits (round-trip safe).
std::string format_double17(double v);

/// Writes content to path via a temp file + rename (atomic on POSIX).
void atomic_write_file(const std::string& path, const std::string& content);

/// Thread cap: BBSPECTRA_THREADS if set and positive, else hardware count.
int worker_thread_cap();

/// Runs jobs on a bounded pool, results ordered by input index regardless of
/// completion order. Exceptions are rethrown (first by index).
std::vector<std::string> run_ordered(const std::vector<std::function<std::string()>>& jobs);

struct ManifestEntry {
  std::string kind;
  std::string path;
};

/// Run manifest: config echo + hash, tool version, wall-clock seconds and the
/// artifact list, written atomically as JSON.
void write_manifest(const std::string& path, const std::string& config_echo,
                    const std::string& hash, double wall_seconds,
                    const std::vector<ManifestEntry>& artifacts);

}  // namespace bbspectra

#endif
