// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace shlab {

EmpiricalSample::EmpiricalSample(std::vector<double> v, std::string src, std::string hash)
    : values(std::move(v)), source(std::move(src)), config_hash(std::move(hash)) {
  for (double x : values)
    if (!std::isfinite(x)) throw std::invalid_argument("sample: non-finite value");
}

double cdf(const Law& law, double x) {
  if (const auto* e = std::get_if<ExpLaw>(&law)) return x <= 0.0 ? 0.0 : -std::expm1(-e->rate * x);
  const auto& n = std::get<NormalLaw>(law);
  return 0.5 * std::erfc(-(x - n.mean) / std::sqrt(2.0 * n.variance));
}

std::string describe(const Law& law) {
  char buf[96];
  if (const auto* e = std::get_if<ExpLaw>(&law)) {
    std::snprintf(buf, sizeof buf, "Exp(%g)", e->rate);
  } else {
    const auto& n = std::get<NormalLaw>(law);
    std::snprintf(buf, sizeof buf, "Normal(%g, %g)", n.mean, n.variance);
  }
  return buf;
}

Law make_law(const std::string& name, double p1, double p2) {
  if (name == "exp") {
    if (!(p1 > 0.0)) throw std::invalid_argument("exp law: rate must be positive");
    return ExpLaw{p1};
  }
  if (name == "normal") {
    if (!(p2 > 0.0)) throw std::invalid_argument("normal law: variance must be positive");
    return NormalLaw{p1, p2};
  }
  throw std::invalid_argument("unknown distribution: " + name);
}

namespace {

double kolmogorov_tail(double c) {
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double t = std::exp(-2.0 * k * k * c * c);
    s += (k % 2 ? 1.0 : -1.0) * t;
    if (t < 1e-18) break;
  }
  return 2.0 * s;
}

}  // namespace

double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0, 1)");
  double lo = 0.2, hi = 5.0;  // tail is decreasing in c
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_tail(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

KsResult ks_one_sample(const EmpiricalSample& sample, const Law& law, double alpha) {
  const std::size_t n = sample.values.size();
  if (n < 50) throw std::invalid_argument("ks_one_sample: need at least 50 values");
  std::vector<double> x = sample.values;
  std::sort(x.begin(), x.end());
  double d = 0.0;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(law, x[i]);
    d = std::max({d, static_cast<double>(i + 1) / nn - f, f - static_cast<double>(i) / nn});
  }
  const double crit = kolmogorov_quantile(alpha) / std::sqrt(nn);
  return {d, crit, d <= crit};
}

KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double alpha) {
  if (a.values.empty() || b.values.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x = a.values, y = b.values;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double crit = kolmogorov_quantile(alpha) * std::sqrt((n + m) / (n * m));
  return {d, crit, d <= crit};
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("variance: need two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double corr(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("corr: need equal sizes >= 2");
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw std::invalid_argument("corr: constant input");
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> jump_tail(const std::vector<std::size_t>& counts, const std::vector<std::size_t>& m_grid) {
  if (counts.empty()) throw std::invalid_argument("jump_tail: no counts");
  std::vector<double> out;
  for (auto m : m_grid) {
    const auto k = std::count_if(counts.begin(), counts.end(), [m](std::size_t c) { return c >= m; });
    out.push_back(static_cast<double>(k) / static_cast<double>(counts.size()));
  }
  return out;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace shlab
