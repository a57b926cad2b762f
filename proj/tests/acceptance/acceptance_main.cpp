// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Verification battery runner: one line per criterion, nonzero exit on any
// hard failure. BBSPECTRA_ACCEPTANCE_QUICK=1 selects the reduced battery.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "bbspectra/acceptance.hpp"

int main(int argc, char** argv) {
  bbspectra::AcceptanceOptions opts;
  const char* env = std::getenv("BBSPECTRA_ACCEPTANCE_QUICK");
  if (env && std::strcmp(env, "0") != 0) opts.quick = true;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;

  const auto results = bbspectra::run_acceptance(opts);
  std::fputs(bbspectra::format_report(results).c_str(), stdout);
  return bbspectra::all_passed(results, /*strict=*/false) ? 0 : 1;
}
