// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shlab/rng.hpp"
#include "shlab/stats.hpp"
#include "shlab/suites.hpp"

using namespace shlab;

TEST_CASE("kolmogorov quantile") {
  // Tabulated asymptotic critical values.
  CHECK(kolmogorov_quantile(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
  CHECK(kolmogorov_quantile(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(kolmogorov_quantile(0.001) == doctest::Approx(1.9495).epsilon(1e-4));
  CHECK_THROWS(kolmogorov_quantile(0.0));
}

TEST_CASE("ks statistic matches counting") {
  Stream g(1, {40});
  std::vector<double> x(300), y(200);
  for (auto& v : x) v = g.exponential(1.3);
  for (auto& v : y) v = 0.5 * std::round(4 * g.exponential(1.0));  // ties
  const auto k = ks_one_sample(EmpiricalSample(x), ExpLaw{1.0});
  CHECK(k.statistic == doctest::Approx(oracle::ks_count(x, [](double t) { return 1 - std::exp(-t); })));
  CHECK(k.critical == doctest::Approx(kolmogorov_quantile(1e-3) / std::sqrt(300.0)));
  const auto k2 = ks_two_sample(EmpiricalSample(x), EmpiricalSample(y));
  CHECK(k2.statistic == doctest::Approx(oracle::ks2_count(x, y)));
  CHECK(k2.critical == doctest::Approx(kolmogorov_quantile(1e-3) * std::sqrt(500.0 / 60000.0)));
}

TEST_CASE("ks examples") {
  Stream g(2, {40});
  std::vector<double> e1(10000);
  for (auto& v : e1) v = g.exponential(1.0);
  CHECK(ks_one_sample(EmpiricalSample(e1), ExpLaw{1.0}).pass);
  CHECK_FALSE(ks_one_sample(EmpiricalSample(e1), ExpLaw{2.0}).pass);
  const std::vector<double> c(100, 0.3);
  const auto kc = ks_one_sample(EmpiricalSample(c), NormalLaw{0.0, 1.0});
  CHECK(kc.statistic >= 0.5);
  CHECK_FALSE(kc.pass);
  CHECK(ks_two_sample(EmpiricalSample(e1), EmpiricalSample(e1)).statistic == 0.0);
  std::vector<double> far(e1);
  for (auto& v : far) v += 1e6;
  CHECK(ks_two_sample(EmpiricalSample(e1), EmpiricalSample(far)).statistic == 1.0);
  CHECK_THROWS(ks_one_sample(EmpiricalSample(std::vector<double>(49, 1.0)), ExpLaw{1.0}));
  CHECK_THROWS(EmpiricalSample({1.0, NAN}));
  CHECK_THROWS(make_law("cauchy", 1.0));
  CHECK(describe(make_law("normal", 1.0, 4.0)) == "Normal(1, 4)");
}

TEST_CASE("corr") {
  const std::vector<double> a{1, 2, 3, 5}, b{-1, -2, -3, -5};
  CHECK(corr(a, a) == doctest::Approx(1.0));
  CHECK(corr(a, b) == doctest::Approx(-1.0));
  Stream g(3, {40});
  std::vector<double> x(10000), y(10000);
  for (auto& v : x) v = g.normal();
  for (auto& v : y) v = g.normal();
  CHECK(std::abs(corr(x, y)) <= 0.04);
  CHECK_THROWS(corr(std::vector<double>{1, 1}, std::vector<double>{1, 2}));
}

TEST_CASE("jump_tail") {
  const std::vector<std::size_t> zeros(10, 0);
  for (double p : jump_tail(zeros, {1, 2, 3})) CHECK(p == 0.0);
  // Geometric counts: P(count >= M) = 2^-M.
  std::vector<std::size_t> geo;
  for (std::size_t m = 0; m < 10; ++m)
    for (std::size_t k = 0; k < (std::size_t{1} << (9 - m)); ++k) geo.push_back(m);
  const auto t = jump_tail(geo, {1, 2, 3});
  CHECK(t[0] == doctest::Approx(511.0 / 1023.0));
  CHECK(t[1] == doctest::Approx(255.0 / 1023.0));
  CHECK(t[2] == doctest::Approx(127.0 / 1023.0));
}

TEST_CASE("config hash") {
  CHECK(config_hash("") == "cbf29ce484222325");
  CHECK(config_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("self-test rejection rate") {
  RunOptions o;
  o.seed = 8;
  for (const auto& c : check_stats_selftest(o, 300, 200)) CHECK_MESSAGE(c.pass, c.name);
}
