// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

// Linked against the library built with the idle-time clamp flipped. The
// exchange identity must notice; exit 0 iff it does.

#include <cstdio>

#include "shlab/suites.hpp"

int main() {
  shlab::RunOptions o;
  const auto c = shlab::check_exchange(o, 20);
  std::printf("%s exchange identity under corrupted clamp: max rel err %.3g (tolerance %.0e)\n",
              c.pass ? "UNDETECTED" : "DETECTED", c.statistic, c.critical);
  return c.pass ? 1 : 0;
}
