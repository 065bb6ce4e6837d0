// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shlab/core_seq.hpp"

namespace shlab {

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
  std::string detail;
};

using Checks = std::vector<CheckResult>;

bool all_pass(const Checks& c);
void append(Checks& into, const Checks& more);

struct RunOptions {
  std::uint64_t seed = 20260101;
  double alpha = 1e-3;
  unsigned threads = 0;
};

// |a - b| / max(|a|, |b|, 1e-3): relative error with an absolute floor of
// 1e-12 at the 1e-9 tolerance used throughout.
double rel_err(double a, double b);
double max_rel_err(const Window& a, const Window& b);

// Deterministic identities.
CheckResult check_dd_equals_ff(const RunOptions& o, std::size_t max_lines = 8, std::size_t window = 10000,
                               std::size_t replicas = 200);
CheckResult check_translation(const RunOptions& o, std::size_t fixtures = 100);
CheckResult check_exchange(const RunOptions& o, std::size_t fixtures = 100);
Checks check_conservation(const RunOptions& o, std::size_t fixtures = 100);
CheckResult check_lemma_se(const RunOptions& o, std::size_t fixtures = 100);
CheckResult check_lemma_bs(const RunOptions& o, std::size_t fixtures = 100);
Checks check_lemma_qz(const RunOptions& o, std::size_t fixtures = 100);
Checks check_q_equivariance(const RunOptions& o, std::size_t fixtures = 100);
Checks identity_suite(const RunOptions& o);

// Distributional checks. Defaults are the acceptance sizes.
Checks check_stationary_queue(const RunOptions& o, double rho_plus = 0.6, double rho_minus = 0.4,
                              std::size_t n = 100000);
Checks check_sojourn_barriers(const RunOptions& o, const std::vector<double>& rho = {0.60, 0.55, 0.50, 0.45},
                              std::size_t n = 100000);
Checks check_burke(const RunOptions& o, const std::vector<double>& rho = {0.60, 0.55, 0.50, 0.45},
                   double rho0 = 0.7, std::size_t n = 100000);
Checks check_sh_marginal(const RunOptions& o, const std::vector<double>& mus = {0.0, 1.0}, std::size_t n = 10000,
                         double step = 1e-2);
Checks check_cross_sampler(const RunOptions& o, double N = 1e6, std::size_t n = 10000, double step = 1e-2,
                           double gate = 50.0);
CheckResult check_monotonicity(const RunOptions& o, double N = 1e6,
                               const std::vector<double>& grid = {-1.0, 0.0, 1.0}, std::size_t n = 1000);
Checks check_epochs(const RunOptions& o, double N = 1e5, double x0 = 1.0, double mu0 = 1.0, std::size_t n = 1000);
Checks check_scale_invariance(const RunOptions& o, double c = 2.0, std::size_t n = 10000, double step = 1e-2,
                              double gate = 50.0);
Checks check_lpp(const RunOptions& o, std::size_t replicas = 1000, double n_small = 2000, double n_large = 4000);
CheckResult check_lemma_dis(const RunOptions& o, Index n = 50, std::size_t replicas = 1000);
Checks check_two_line_burke(const RunOptions& o, std::size_t n = 10000, double step = 1e-3);
Checks check_stats_selftest(const RunOptions& o, std::size_t meta = 1000, std::size_t n = 500);

}  // namespace shlab
