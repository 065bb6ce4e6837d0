// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace shlab {

struct EmpiricalSample {
  std::vector<double> values;
  std::string source;
  std::string config_hash;

  EmpiricalSample() = default;
  EmpiricalSample(std::vector<double> v, std::string src = {}, std::string hash = {});
};

struct ExpLaw {
  double rate;
};
struct NormalLaw {
  double mean;
  double variance;
};
using Law = std::variant<ExpLaw, NormalLaw>;

double cdf(const Law& law, double x);
std::string describe(const Law& law);

// Law by name: "exp" with rate, or "normal" with mean and variance.
Law make_law(const std::string& name, double p1, double p2 = 0.0);

struct KsResult {
  double statistic;
  double critical;
  bool pass;
};

// c(alpha) with 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 c^2) = alpha.
double kolmogorov_quantile(double alpha);

KsResult ks_one_sample(const EmpiricalSample& sample, const Law& law, double alpha = 1e-3);
KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double alpha = 1e-3);

double corr(const std::vector<double>& a, const std::vector<double>& b);

// Empirical P(count >= M) for each M.
std::vector<double> jump_tail(const std::vector<std::size_t>& counts, const std::vector<std::size_t>& m_grid);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);

// FNV-1a, hex.
std::string config_hash(const std::string& text);

}  // namespace shlab
