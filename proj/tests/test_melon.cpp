// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shlab/melon.hpp"
#include "shlab/sampler.hpp"
#include "shlab/stats.hpp"
#include "shlab/suites.hpp"

using namespace shlab;

namespace {
LineEnsemble lines(Stream& g, std::vector<double> rates, std::size_t len, Index base = 0) {
  std::vector<Window> l;
  for (double r : rates) l.push_back(oracle::exp_window(g, r, base, len));
  return LineEnsemble(l);
}
const BoundaryMode E = BoundaryMode::empty();
}  // namespace

TEST_CASE("d_tandem small cases") {
  Stream g(1, {20});
  const auto ens = lines(g, {1.0, 0.8, 0.6}, 50);
  CHECK(d_tandem(LineEnsemble({ens[0]}), E).values == ens[0].values);
  CHECK(d_tandem(LineEnsemble({ens[0], ens[1]}), E).values == depart(ens[0], ens[1], E).values);
  const auto explicit3 = depart(ens[0], depart(ens[1], ens[2], E), E);
  CHECK(max_rel_err(d_tandem(ens, E), explicit3) <= 1e-12);
  CHECK_THROWS(d_tandem(LineEnsemble(), E));
}

TEST_CASE("md_map") {
  Stream g(2, {20});
  const auto one = lines(g, {1.0}, 20);
  CHECK(md_map(one, E)[0].values == one[0].values);
  const auto c = LineEnsemble({Window::constant(0, 10, 2.0), Window::constant(0, 10, 2.0), Window::constant(0, 10, 2.0)});
  for (const auto& l : md_map(c, BoundaryMode::primed(2.0)).lines)
    for (double v : l.values) CHECK(v == 2.0);
  // Empty start: only the first index carries the initial idle period.
  for (const auto& l : md_map(c, E).lines)
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l.values[i] == 2.0);
  const auto four = lines(g, {1.0, 0.9, 0.8, 0.7}, 100);
  const auto m = md_map(four, E);
  CHECK(m.ordered);
  CHECK(max_rel_err(m[2], d_tandem(LineEnsemble({four[0], four[1], four[2]}), E)) <= 1e-12);
}

TEST_CASE("sigma_i") {
  Stream g(3, {20});
  const auto ens = lines(g, {1.0, 0.8, 0.6}, 40);
  const auto rep = sigma_i(ens, 1, {0.5, 0.9, 0.6}, E);
  CHECK(rep.ens[0].values == ens[0].values);
  CHECK(rep.ens[1].values == ens[1].values);
  const auto act = sigma_i(ens, 2, {1.0, 0.8, 0.6}, E);
  CHECK(act.ens[1].values == depart(ens[1], ens[2], E).values);
  CHECK(act.ens[2].values == arrivals_kept(ens[1], ens[2], E).values);
  CHECK(act.density == std::vector<double>{1.0, 0.6, 0.8});
  const auto cst = LineEnsemble({Window::constant(0, 5, 1.5), Window::constant(0, 5, 1.5)});
  const auto cc = sigma_i(cst, 1, {0.9, 0.1}, BoundaryMode::primed(1.5));
  for (std::size_t i = 0; i < 2; ++i)
    for (double v : cc.ens[i].values) CHECK(v == 1.5);
  CHECK_THROWS(sigma_i(ens, 0, {1.0, 0.8, 0.6}, E));
  CHECK_THROWS(sigma_i(ens, 3, {1.0, 0.8, 0.6}, E));
  CHECK_THROWS(sigma_i(ens, 1, {1.0, 0.8, 0.6}, BoundaryMode::burn(2)));
}

TEST_CASE("empirical densities") {
  const auto d = empirical_densities(LineEnsemble({Window::constant(0, 4, 0.5)}));
  CHECK(d[0] == doctest::Approx(2.0));
}

TEST_CASE("melonize base cases") {
  Stream g(4, {20});
  const auto two = lines(g, {0.9, 0.5}, 30);
  const auto t = melonize(two, DensityVector({0.9, 0.5}), E);
  CHECK(t.lines[0].values == two[0].values);
  CHECK(t.lines[1].values == depart(two[0], two[1], E).values);
  CHECK(t.u[0].values == two[1].values);
  CHECK(t.v[0].values == two[0].values);

  const auto three = lines(g, {0.9, 0.7, 0.5}, 60);
  const auto t3 = melonize(three, DensityVector({0.9, 0.7, 0.5}), E);
  // D(D(I1, I2), D(R(I1, I2), I3)) from four explicit queue calls.
  const auto d12 = depart(three[0], three[1], E);
  const auto r12 = arrivals_kept(three[0], three[1], E);
  const auto f3 = depart(d12, depart(r12, three[2], E), E);
  CHECK(max_rel_err(t3.lines[2], f3) <= 1e-12);
}

TEST_CASE("melonize trace invariants") {
  Stream g(5, {20});
  const DensityVector rho({0.9, 0.8, 0.7, 0.6, 0.5});
  const auto in = lines(g, rho.rho(), 300, -50);
  const auto t = melonize(in, rho, E);
  for (std::size_t i = 2; i <= 5; ++i) {
    CHECK(max_rel_err(t.lines[i - 1], depart(t.v[i - 2], t.u[i - 2], E)) <= 1e-12);
    CHECK(t.v[i - 2].values == t.lines[i - 2].values);
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < 300; ++k) {
      lo += t.lines[i - 2].values[k];
      hi += t.lines[i - 1].values[k];
      CHECK(hi >= lo * (1 - 1e-12));
    }
  }
  CHECK(extract_sojourns(t).size() == 4);
  CHECK(extract_sojourns(t)[1] == t.J[1].at(248));
  const auto tb = melonize(in, rho, BoundaryMode::burn(100));
  CHECK(tb.valid_from == 50);
  CHECK_THROWS(tb.j_at(2, 10));
  CHECK_THROWS(melonize(in, rho, BoundaryMode::burn(300)));
  CHECK_THROWS(melonize(in, DensityVector({0.9, 0.8}), E));
}

TEST_CASE("constant input sojourn equals the service value") {
  const auto c = LineEnsemble({Window::constant(0, 8, 1.25), Window::constant(0, 8, 1.25), Window::constant(0, 8, 1.25)});
  const auto t = melonize(c, DensityVector({0.9, 0.8, 0.7}), E);
  for (double j : extract_sojourns(t)) CHECK(j == 1.25);
}

TEST_CASE("melonize and bottom-up sorting agree with md_map") {
  Stream g(6, {20});
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<double> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(1.0 - 0.07 * static_cast<double>(i));
    const DensityVector rho(r);
    const auto in = lines(g, r, 2000);
    const auto md = md_map(in, E);
    const auto fr = melonize(in, rho, E);
    const auto wt = sort_insert(in, rho, E);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(max_rel_err(fr.lines[i], md[i]) <= 1e-9);
      CHECK(max_rel_err(wt[i], md[i]) <= 1e-9);
    }
  }
}

TEST_CASE("bottom-up sojourns equal the melon sojourns") {
  Stream g(7, {20});
  const DensityVector rho({0.9, 0.8, 0.7, 0.6});
  const auto in = lines(g, rho.rho(), 500);
  std::vector<Window> js;
  sort_insert(in, rho, E, &js);
  const auto t = melonize(in, rho, E);
  REQUIRE(js.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_rel_err(js[i], t.J[i]) <= 1e-9);
}

TEST_CASE("identity checks on reduced fixtures") {
  RunOptions o;
  o.seed = 99;
  CHECK(check_translation(o, 30).pass);
  CHECK(check_exchange(o, 30).pass);
  CHECK(check_lemma_bs(o, 30).pass);
  CHECK(all_pass(check_lemma_qz(o, 30)));
  CHECK(check_lemma_se(o, 30).pass);
  CHECK(all_pass(check_conservation(o, 30)));
}

TEST_CASE("packed melon") {
  const PiecewiseLinearPath z(0.0, 0.25, {0, 0, 0, 0, 0});
  const PiecewiseLinearPath id(0.0, 0.25, {0, 0.25, 0.5, 0.75, 1.0});
  auto [up, down] = alpha_pair(z, id);
  CHECK(up.knots == id.knots);
  CHECK(down.knots == z.knots);
  auto [u2, d2] = alpha_pair(id, id);
  CHECK(u2.knots == id.knots);
  CHECK(d2.knots == id.knots);
  CHECK(packed_melon(PathEnsemble({id})).lines[0].knots == id.knots);
  CHECK_THROWS(packed_melon(PathEnsemble({PiecewiseLinearPath(-1.0, 1.0, {0, 0})})));
  // Top line dominates: alpha^U - f = E >= 0 and alpha^U + alpha^D = f + g.
  Stream g(8, {20});
  std::vector<PiecewiseLinearPath> ws;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> k(201, 0.0);
    for (std::size_t j = 1; j < k.size(); ++j) k[j] = k[j - 1] + 0.1 * g.normal() + 0.005 * i;
    ws.emplace_back(0.0, 0.01, k);
  }
  const auto pm = packed_melon(PathEnsemble(ws));
  for (std::size_t j = 0; j < 201; ++j) {
    double in_sum = 0.0, out_sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      in_sum += ws[i].knots[j];
      out_sum += pm[i].knots[j];
    }
    CHECK(std::abs(in_sum - out_sum) <= 1e-9);
    for (int i = 0; i + 1 < 4; ++i) CHECK(pm[i].knots[j] >= pm[i + 1].knots[j] - 1e-12);
  }
}

TEST_CASE("burke property (reduced size)") {
  RunOptions o;
  o.seed = 5;
  for (const auto& c : check_burke(o, {0.6, 0.5}, 0.7, 3000)) CHECK_MESSAGE(c.pass, c.name);
}
