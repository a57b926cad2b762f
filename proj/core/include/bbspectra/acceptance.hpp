// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_ACCEPTANCE_HPP
#define BBSPECTRA_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace bbspectra {

/// One verification criterion of the battery.
struct CriterionResult {
  int id = 0;
  std::string name;
  enum class Status { pass, fail, inconclusive, skipped } status = Status::skipped;
  std::string details;  // measured values, targets, tolerances
  double seconds = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;  // reduced battery, a couple of minutes
};

/// Runs the verification battery and returns one result per criterion.
/// Criteria are deterministic; all tolerances are fixed here, not tunable.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// Formats "[PASS] 3 finite-ball gap rate ... (2.1s)" lines.
std::string format_report(const std::vector<CriterionResult>& results);
/// JSON report with per-criterion status and details.
std::string report_json(const std::vector<CriterionResult>& results);

/// True when no criterion failed (inconclusive counts as failure only in
/// strict mode).
bool all_passed(const std::vector<CriterionResult>& results, bool strict);

}  // namespace bbspectra

#endif
