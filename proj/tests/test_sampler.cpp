// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "shlab/melon.hpp"
#include "shlab/sampler.hpp"
#include "shlab/stats.hpp"
#include "shlab/suites.hpp"

using namespace shlab;

TEST_CASE("sample_nu moments") {
  const auto one = sample_nu(DensityVector({1.0}), {0, 1000000}, 42, 0);
  CHECK(std::abs(mean(one[0].values) - 1.0) <= 0.004);
  const auto two = sample_nu(DensityVector({2.0}), {0, 200000}, 42, 1);
  const double band = 4.0 * std::sqrt(2.0 / 200000.0) / 4.0 * 2.0;  // sd of sample variance ~ sqrt(8)/4 / sqrt(n)
  CHECK(std::abs(variance(two[0].values) - 0.25) <= band);
  CHECK(ks_one_sample(EmpiricalSample(std::vector<double>(two[0].values.begin(), two[0].values.begin() + 10000)),
                      ExpLaw{2.0})
            .pass);
  CHECK_THROWS(sample_nu(DensityVector({1.0}), {0, 0}, 1, 0));
}

TEST_CASE("reproducibility") {
  const DensityVector rho({0.6, 0.5, 0.4});
  const auto a = sample_mu(rho, {-10, 500}, 9, 3);
  const auto b = sample_mu(rho, {-10, 500}, 9, 3);
  const auto c = sample_mu(rho, {-10, 500}, 9, 4);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].values == b[i].values);
    CHECK(a[i].values != c[i].values);
  }
  SamplerConfig cfg;
  cfg.N = 1e3;
  cfg.mu_grid = {-1, 0, 1};
  const auto g1 = sample_GN(cfg, 2), g2 = sample_GN(cfg, 2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(g1.paths[i].knots == g2.paths[i].knots);
  const auto s1 = sample_sh_fdd({0.0, 1.0}, 1.0, 0.05, 5.0, 3, 0), s2 = sample_sh_fdd({0.0, 1.0}, 1.0, 0.05, 5.0, 3, 0);
  CHECK(s1.ens[1].knots == s2.ens[1].knots);
}

TEST_CASE("sample_mu single line is sample_nu") {
  const DensityVector rho({0.7});
  CHECK(sample_mu(rho, {0, 100}, 1, 1)[0].values == sample_nu(rho, {0, 100}, 1, 1)[0].values);
  CHECK(sample_mu(rho, {0, 100}, 1, 1, MuSeeding::BurnIn)[0].values == sample_nu(rho, {0, 100}, 1, 1)[0].values);
}

TEST_CASE("sample_mu marginals and ordering") {
  const DensityVector rho({0.7, 0.5, 0.3});
  std::vector<std::vector<double>> last(3, std::vector<double>(5000));
  std::vector<std::vector<double>> burn(3, std::vector<double>(5000));
  for (std::size_t r = 0; r < 5000; ++r) {
    const auto s = sample_mu(rho, {0, 40}, 21, r);
    const auto b = sample_mu(rho, {0, 2}, 22, r, MuSeeding::BurnIn);
    for (std::size_t i = 0; i < 3; ++i) {
      last[i][r] = s[i].values.back();
      burn[i][r] = b[i].values.back();
    }
    if (r < 50) {
      double c0 = 0, c1 = 0, c2 = 0;
      for (std::size_t k = 0; k < 40; ++k) {
        c0 += s[0].values[k];
        c1 += s[1].values[k];
        c2 += s[2].values[k];
        CHECK(c1 >= c0 * (1 - 1e-12));
        CHECK(c2 >= c1 * (1 - 1e-12));
      }
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(ks_one_sample(EmpiricalSample(last[i]), ExpLaw{rho[i]}).pass);
    CHECK(ks_two_sample(EmpiricalSample(last[i]), EmpiricalSample(burn[i])).pass);
  }
}

TEST_CASE("rho parametrization and windows") {
  CHECK(rho_of_mu(0.0, 1e6) == 0.5);
  CHECK(rho_of_mu(1.0, 1e6) == doctest::Approx(0.5 - 0.25 * 0.01));
  CHECK(gn_half_width(1.0, 1e6) == 10000);
  CHECK(gn_half_width(0.5, 1e3) == 50);
  SamplerConfig bad;
  bad.mu_grid = {1.0, 0.0};
  CHECK_THROWS(bad.validate());
  bad.mu_grid = {1e4};
  bad.N = 1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("G^N paths") {
  SamplerConfig cfg;
  cfg.N = 1e6;
  cfg.mu_grid = {0.0};
  std::vector<double> x(2000);
  for (std::size_t r = 0; r < x.size(); ++r) {
    const auto s = sample_GN(cfg, r);
    CHECK(s.paths[0](0.0) == 0.0);
    x[r] = s.paths[0](1.0) - s.paths[0](0.0);
  }
  const double band = 4.0 * 2.0 / std::sqrt(2000.0);
  CHECK(std::abs(mean(x)) <= band);
  CHECK(std::abs(variance(x) - 4.0) <= 4.0 * 4.0 * std::sqrt(2.0 / 2000.0));
}

TEST_CASE("two-sided walk") {
  const auto p = sample_two_sided_bm(0.5, 1.0, 2.0, 0.01, 5, 0);
  CHECK(p(0.0) == 0.0);
  CHECK(p.left_end == doctest::Approx(-1.0));
  CHECK(p.right_end() == doctest::Approx(2.0));
  CHECK_THROWS(sample_two_sided_bm(0.0, 1.0, 1.0, 0.0, 1, 0));
  const std::size_t n = 20000;
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto w = sample_two_sided_bm(0.0, 1.0, 1.0, 0.05, 6, r);
    a[r] = w(1.0);
    b[r] = w(0.0) - w(-1.0);
    c[r] = w(0.5) - w(0.0);
  }
  CHECK(std::abs(corr(a, b)) <= 4 / std::sqrt(double(n)));
  CHECK(std::abs(variance(a) - 4.0) <= 4.0 * 4.0 * std::sqrt(2.0 / n));
  CHECK(ks_one_sample(EmpiricalSample(c), NormalLaw{0.0, 2.0}).pass);
}

TEST_CASE("SH fdd with one drift is the walk") {
  const auto s = sample_sh_fdd({0.7}, 1.0, 0.01, 0.0, 8, 1);
  CHECK(s.ens[0].knots == sample_two_sided_bm(0.7, 1.0, 1.0, 0.01, 8, 1, 0).knots);
  CHECK_THROWS(sample_sh_fdd({1.0, 0.0}, 1.0, 0.01, 0.0, 8, 1));
}

TEST_CASE("sampler-level checks (reduced size)") {
  RunOptions o;
  o.seed = 4;
  for (const auto& c : check_sh_marginal(o, {0.0, 1.0}, 2000, 0.02)) CHECK_MESSAGE(c.pass, c.name);
  CHECK(check_monotonicity(o, 1e4, {-1.0, 0.0, 1.0}, 50).pass);
}
