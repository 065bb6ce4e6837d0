// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "shlab/continuous_q.hpp"
#include "shlab/lpp.hpp"
#include "shlab/melon.hpp"
#include "shlab/parallel.hpp"
#include "shlab/queueing.hpp"
#include "shlab/rng.hpp"
#include "shlab/sampler.hpp"
#include "shlab/stats.hpp"

namespace shlab {

bool all_pass(const Checks& c) {
  return std::all_of(c.begin(), c.end(), [](const CheckResult& r) { return r.pass; });
}

void append(Checks& into, const Checks& more) { into.insert(into.end(), more.begin(), more.end()); }

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3});
}

double max_rel_err(const Window& a, const Window& b) {
  if (!a.same_range(b)) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, rel_err(a.values[j], b.values[j]));
  return m;
}

namespace {

constexpr double kTol = 1e-9;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::uint64_t check_seed(const RunOptions& o, std::uint64_t id) { return stream_key(o.seed, {0xC0FFEE, id}); }

// Per-fixture random source.
Stream fixture(const RunOptions& o, std::uint64_t id, std::size_t k) { return Stream(check_seed(o, id), {k}); }

std::size_t pick(Stream& g, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(g.uniform() * static_cast<double>(hi - lo + 1));
}

double between(Stream& g, double lo, double hi) { return lo + (hi - lo) * g.uniform(); }

// Distinct decreasing rates in [lo, hi].
std::vector<double> random_rates(Stream& g, std::size_t n, double lo, double hi) {
  std::vector<double> r(n);
  for (auto& x : r) x = between(g, lo, hi);
  std::sort(r.rbegin(), r.rend());
  for (std::size_t i = 1; i < n; ++i)
    if (!(r[i] < r[i - 1])) r[i] = r[i - 1] * (1.0 - 1e-3);
  return r;
}

Window exp_window(Stream& g, double rate, Index base, std::size_t len) {
  std::vector<double> v(len);
  for (auto& x : v) x = g.exponential(rate);
  return Window(base, std::move(v));
}

LineEnsemble exp_lines(Stream& g, const std::vector<double>& rates, Index base, std::size_t len) {
  std::vector<Window> l;
  for (double r : rates) l.push_back(exp_window(g, r, base, len));
  return LineEnsemble(std::move(l));
}

CheckResult from_ks(std::string name, const KsResult& k, std::string detail = {}) {
  return {std::move(name), k.statistic, k.critical, k.pass, std::move(detail)};
}

CheckResult ks_check(std::string name, const std::vector<double>& x, const Law& law, double alpha) {
  const auto k = ks_one_sample(EmpiricalSample(x), law, alpha);
  return from_ks(std::move(name), k, "n=" + std::to_string(x.size()) + " vs " + describe(law));
}

CheckResult ks2_check(std::string name, const std::vector<double>& a, const std::vector<double>& b,
                      double alpha, std::string extra = {}) {
  const auto k = ks_two_sample(EmpiricalSample(a), EmpiricalSample(b), alpha);
  std::string d = "n=" + std::to_string(a.size()) + ", m=" + std::to_string(b.size());
  if (!extra.empty()) d += ", " + extra;
  return from_ks(std::move(name), k, d);
}

CheckResult corr_check(std::string name, const std::vector<double>& a, const std::vector<double>& b) {
  const double c = corr(a, b);
  const double crit = 4.0 / std::sqrt(static_cast<double>(a.size()));
  return {std::move(name), std::abs(c), crit, std::abs(c) <= crit, fmt("corr=%.5f", c)};
}

CheckResult tolerance_check(std::string name, double worst, std::size_t fixtures) {
  return {std::move(name), worst, kTol, worst <= kTol, "max relative error over " + std::to_string(fixtures) + " fixtures"};
}

// Reduce a per-task maximum.
template <class Fn>
double max_over(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<double> r(n, 0.0);
  parallel_for(n, [&](std::size_t i) { r[i] = fn(i); }, threads);
  return n ? *std::max_element(r.begin(), r.end()) : 0.0;
}

}  // namespace

CheckResult check_dd_equals_ff(const RunOptions& o, std::size_t max_lines, std::size_t window,
                               std::size_t replicas) {
  const std::size_t nn = max_lines >= 2 ? max_lines - 1 : 0;
  std::vector<double> melon_err(nn * replicas), insert_err(nn * replicas);
  const std::uint64_t seed = check_seed(o, 1);
  parallel_for(nn * replicas, [&](std::size_t task) {
    const std::size_t n = 2 + task / replicas;
    std::vector<double> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(1.0 - 0.07 * static_cast<double>(i));
    const DensityVector rho(r);
    const auto in = sample_nu(rho, {0, window}, stream_key(seed, {n}), task % replicas);
    const auto md = md_map(in, BoundaryMode::empty());
    const auto fr = melonize(in, rho, BoundaryMode::empty());
    const auto wt = sort_insert(in, rho, BoundaryMode::empty());
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e1 = std::max(e1, max_rel_err(fr.lines[i], md[i]));
      e2 = std::max(e2, max_rel_err(wt[i], md[i]));
    }
    melon_err[task] = e1;
    insert_err[task] = e2;
  }, o.threads);
  const double m1 = melon_err.empty() ? 0.0 : *std::max_element(melon_err.begin(), melon_err.end());
  const double m2 = insert_err.empty() ? 0.0 : *std::max_element(insert_err.begin(), insert_err.end());
  const double worst = std::max(m1, m2);
  return {"melonization equals md_map", worst, kTol, worst <= kTol,
          fmt("n=2..%g, window %g, %g replicas", static_cast<double>(max_lines), static_cast<double>(window),
              static_cast<double>(replicas)) +
              fmt("; melonize %.3g, bottom-up sorting %.3g", m1, m2)};
}

CheckResult check_translation(const RunOptions& o, std::size_t fixtures) {
  const double worst = max_over(fixtures, o.threads, [&](std::size_t k) {
    Stream g = fixture(o, 2, k);
    const std::size_t n = pick(g, 1, 6);
    const auto ens = exp_lines(g, random_rates(g, n, 0.3, 1.5), -50, 200);
    const double c = between(g, 0.1, 2.0);
    const double j = c + g.exponential(1.0);
    std::vector<Window> shifted;
    for (const auto& w : ens.lines) shifted.push_back(w.shifted(-c));
    const auto lhs = md_map(LineEnsemble(shifted), BoundaryMode::primed(j - c));
    const auto rhs = md_map(ens, BoundaryMode::primed(j));
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, max_rel_err(lhs[i], rhs[i].shifted(-c)));
    return e;
  });
  return tolerance_check("translation md_map(I - c) = md_map(I) - c", worst, fixtures);
}

CheckResult check_exchange(const RunOptions& o, std::size_t fixtures) {
  const double worst = max_over(fixtures, o.threads, [&](std::size_t k) {
    Stream g = fixture(o, 3, k);
    const std::size_t n = pick(g, 3, 6);
    const auto rates = random_rates(g, n, 0.3, 1.5);
    const auto ens = exp_lines(g, rates, 0, 500);
    const auto base = d_tandem(ens, BoundaryMode::empty());
    double e = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto s = sigma_i(ens, i, rates, BoundaryMode::empty());
      e = std::max(e, max_rel_err(d_tandem(s.ens, BoundaryMode::empty()), base));
    }
    return e;
  });
  return tolerance_check("exchange D(k)(sigma_i I) = D(k)(I)", worst, fixtures);
}

Checks check_conservation(const RunOptions& o, std::size_t fixtures) {
  std::vector<double> de(fixtures), re(fixtures);
  parallel_for(fixtures, [&](std::size_t k) {
    Stream g = fixture(o, 4, k);
    const auto s = exp_window(g, between(g, 0.3, 1.5), 0, 300);
    const auto a = exp_window(g, between(g, 0.3, 1.5), 0, 300);
    const auto mode = k % 2 ? BoundaryMode::primed(g.exponential(0.5)) : BoundaryMode::empty();
    const auto q = run_queue(s, a, mode);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      e1 = std::max(e1, std::abs(q.depart.values[i] - (s.values[i] + q.idle.values[i])));
      e2 = std::max(e2, rel_err(q.kept.values[i] + q.idle.values[i], a.values[i]));
    }
    de[k] = e1;
    re[k] = e2;
  }, o.threads);
  const double m1 = *std::max_element(de.begin(), de.end());
  const double m2 = *std::max_element(re.begin(), re.end());
  return {{"d = s + e", m1, 0.0, m1 == 0.0, "max absolute gap, exact"},
          tolerance_check("r + e = a", m2, fixtures)};
}

CheckResult check_lemma_se(const RunOptions& o, std::size_t fixtures) {
  const double worst = max_over(fixtures, o.threads, [&](std::size_t k) {
    Stream g = fixture(o, 5, k);
    const auto s = exp_window(g, between(g, 0.3, 1.5), 10, 200);
    const auto a = exp_window(g, between(g, 0.3, 1.5), 10, 200);
    const double j = k % 3 == 0 ? 0.0 : g.exponential(0.3);
    const auto e = idle_times(s, a, BoundaryMode::primed(j));
    const auto psi = psi_m(j, s, a);
    double cum = 0.0, err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      cum += e.values[i];
      err = std::max(err, rel_err(cum, psi.values[i]));
    }
    return err;
  });
  return tolerance_check("cumulative idle = psi^m(J, s, a)", worst, fixtures);
}

CheckResult check_lemma_bs(const RunOptions& o, std::size_t fixtures) {
  const double worst = max_over(fixtures, o.threads, [&](std::size_t f) {
    Stream g = fixture(o, 6, f);
    const std::size_t k = pick(g, 1, 4);
    std::vector<Window> in;
    for (std::size_t l = 0; l <= k; ++l) in.push_back(exp_window(g, between(g, 0.3, 1.5), -20, 100));
    const LineEnsemble tail(std::vector<Window>(in.begin() + 1, in.end()));
    const double lhs = phi_mn(d_tandem(tail, BoundaryMode::empty()) - in[0]);
    double rhs = 0.0;
    for (std::size_t l = 1; l <= k; ++l) rhs += phi_mn(in[l] - in[l - 1]);
    for (std::size_t l = 2; l <= k; ++l) {
      Window sum = in[l];
      for (std::size_t i = l + 1; i <= k; ++i) sum = sum + in[i];
      rhs += mx_mn(sum);
    }
    // Excess over the bound, relative; <= 0 when the bound holds.
    return (lhs - rhs) / std::max(rhs, 1e-3);
  });
  return {"Phi(D(k)_{m,0} - I0) bound", worst, kTol, worst <= kTol,
          "max relative excess over " + std::to_string(fixtures) + " fixtures"};
}

Checks check_lemma_qz(const RunOptions& o, std::size_t fixtures) {
  std::vector<double> e1(fixtures), e2(fixtures), e3(fixtures);
  parallel_for(fixtures, [&](std::size_t f) {
    Stream g = fixture(o, 7, f);
    const std::size_t k = pick(g, 2, 4);
    const auto ens = exp_lines(g, random_rates(g, k, 0.3, 1.5), 0, 200);
    const double j = g.exponential(0.3);
    // Single queue: Primed <= Empty elementwise.
    const auto dp = depart(ens[0], ens[1], BoundaryMode::primed(j));
    const auto de = depart(ens[0], ens[1], BoundaryMode::empty());
    double a = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dp.size(); ++i) a = std::max(a, (dp.values[i] - de.values[i]) / std::max(de.values[i], 1e-3));
    // Tandem.
    const auto tp = d_tandem(ens, BoundaryMode::primed(j));
    const auto te = d_tandem(ens, BoundaryMode::empty());
    double b = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tp.size(); ++i) b = std::max(b, (tp.values[i] - te.values[i]) / std::max(te.values[i], 1e-3));
    // Cumulative Empty departures increase under an elementwise increase of any input.
    std::vector<Window> up = ens.lines;
    for (auto& w : up)
      for (auto& v : w.values)
        if (g.uniform() < 0.3) v += g.exponential(1.0);
    const auto lo = d_tandem(ens, BoundaryMode::empty());
    const auto hi = d_tandem(LineEnsemble(up), BoundaryMode::empty());
    double c = -std::numeric_limits<double>::infinity(), sl = 0.0, sh = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      sl += lo.values[i];
      sh += hi.values[i];
      c = std::max(c, (sl - sh) / std::max(sh, 1e-3));
    }
    e1[f] = a;
    e2[f] = b;
    e3[f] = c;
  }, o.threads);
  auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  const std::string d = "max relative excess over " + std::to_string(fixtures) + " fixtures";
  return {{"depart Primed <= Empty", mx(e1), kTol, mx(e1) <= kTol, d},
          {"tandem Primed <= Empty", mx(e2), kTol, mx(e2) <= kTol, d},
          {"cumulative Empty departures monotone", mx(e3), kTol, mx(e3) <= kTol, d}};
}

Checks check_q_equivariance(const RunOptions& o, std::size_t fixtures) {
  std::vector<double> t_err(fixtures), s_err(fixtures), d_err(fixtures), id_err(fixtures);
  const std::uint64_t seed = check_seed(o, 8);
  parallel_for(fixtures, [&](std::size_t f) {
    Stream g(seed, {f, 99});
    const std::size_t k = pick(g, 1, 4);
    std::vector<double> drifts(k);
    for (auto& d : drifts) d = between(g, -2.0, 2.0);
    std::sort(drifts.begin(), drifts.end());
    std::vector<PiecewiseLinearPath> paths;
    for (std::size_t i = 0; i < k; ++i) paths.push_back(sample_two_sided_bm(drifts[i], 10.0, 10.0, 0.05, seed, f, i));
    const PathEnsemble ens(paths);
    auto h = sample_two_sided_bm(between(g, -1.0, 1.0), 10.0, 10.0, 0.05, seed, f, 77);
    const double shift = between(g, -3.0, 3.0);
    for (auto& v : h.knots) v += shift;
    const double c = between(g, 0.5, 3.0);

    auto affine = [&](const PiecewiseLinearPath& p) {
      auto out = p;
      for (std::size_t j = 0; j < out.knots.size(); ++j) out.knots[j] = c * (p.knots[j] - h.knots[j]);
      return out;
    };
    std::vector<PiecewiseLinearPath> moved;
    for (const auto& p : paths) moved.push_back(affine(p));
    const auto lhs = q_k(PathEnsemble(moved));
    const auto q = q_k(ens);
    double te = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto rhs = affine(q[i]);
      for (std::size_t j = 0; j < rhs.knots.size(); ++j) te = std::max(te, rel_err(lhs[i].knots[j], rhs.knots[j]));
    }
    t_err[f] = te;

    const double tau = between(g, 0.3, 3.0);
    std::vector<PiecewiseLinearPath> scaled;
    for (const auto& p : paths) scaled.push_back(scale_path(p, tau));
    const auto qs = q_k(PathEnsemble(scaled));
    double se = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto sq = scale_path(q[i], tau);
      se = std::max(se, rel_err(sq.left_end, qs[i].left_end));
      se = std::max(se, rel_err(sq.spacing, qs[i].spacing));
      for (std::size_t j = 0; j < sq.knots.size(); ++j) se = std::max(se, rel_err(sq.knots[j], qs[i].knots[j]));
    }
    s_err[f] = se;

    const auto& a = paths.front();
    const auto b = sample_two_sided_bm(0.0, 10.0, 10.0, 0.05, seed, f, 78);
    const double n = 9.0 / std::max(tau, 1.0);
    d_err[f] = rel_err(metric_dn(scale_path(a, tau), scale_path(b, tau), n), metric_dn(a, b, tau * n));

    const auto same = q_map(a, a);
    double ie = 0.0;
    for (std::size_t j = 0; j < a.knots.size(); ++j) ie = std::max(ie, std::abs(same.knots[j] - a.knots[j]));
    id_err[f] = ie;
  }, o.threads);
  auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  return {tolerance_check("Q^k(c(f - h)) = c(Q^k(f) - h)", mx(t_err), fixtures),
          tolerance_check("scaling commutes with Q^k", mx(s_err), fixtures),
          tolerance_check("d_N(f^tau, g^tau) = d_{tau N}(f, g)", mx(d_err), fixtures),
          {"Q(f, f) = f", mx(id_err), 0.0, mx(id_err) == 0.0, "max absolute gap, exact"}};
}

Checks identity_suite(const RunOptions& o) {
  Checks c{check_dd_equals_ff(o), check_translation(o), check_exchange(o)};
  append(c, check_conservation(o));
  c.push_back(check_lemma_se(o));
  c.push_back(check_lemma_bs(o));
  append(c, check_lemma_qz(o));
  append(c, check_q_equivariance(o));
  return c;
}

Checks check_stationary_queue(const RunOptions& o, double rho_plus, double rho_minus, std::size_t n) {
  if (!(rho_plus > rho_minus)) throw std::invalid_argument("stationary queue: need rho_plus > rho_minus");
  const double gap = rho_plus - rho_minus;
  const std::uint64_t seed = check_seed(o, 20);
  const std::size_t len = 4;
  std::vector<double> d(n), r(n), t(n), dprev(n), rprev(n);
  parallel_for(n, [&](std::size_t i) {
    Stream g(seed, {1, i});
    const auto s = exp_window(g, rho_plus, 0, len);
    const auto a = exp_window(g, rho_minus, 0, len);
    const auto q = run_queue(s, a, BoundaryMode::primed(g.exponential(gap)));
    d[i] = q.depart.values[len - 1];
    r[i] = q.kept.values[len - 1];
    t[i] = q.sojourn.values[len - 1];
    dprev[i] = q.depart.values[len - 2];
    rprev[i] = q.kept.values[len - 2];
  }, o.threads);

  const std::size_t b = default_burn_in(gap);
  auto burn_sample = [&](std::size_t bb, std::uint64_t tag) {
    std::vector<double> bd(n), br(n), bt(n);
    parallel_for(n, [&](std::size_t i) {
      Stream g(seed, {tag, i});
      const auto s = exp_window(g, rho_plus, -static_cast<Index>(bb), bb + 1);
      const auto a = exp_window(g, rho_minus, -static_cast<Index>(bb), bb + 1);
      const auto q = run_queue(s, a, BoundaryMode::burn(bb));
      bd[i] = q.depart.values.back();
      br[i] = q.kept.values.back();
      bt[i] = q.sojourn.values.back();
    }, o.threads);
    return std::array<std::vector<double>, 3>{bd, br, bt};
  };
  const auto b1 = burn_sample(b, 2);
  const auto b2 = burn_sample(2 * b, 3);

  Checks c{ks_check("depart marginal", d, ExpLaw{rho_minus}, o.alpha),
           ks_check("arrivals_kept marginal", r, ExpLaw{rho_plus}, o.alpha),
           ks_check("sojourn marginal", t, ExpLaw{gap}, o.alpha),
           ks2_check("Primed vs BurnIn depart", d, b1[0], o.alpha, "B=" + std::to_string(b)),
           ks2_check("Primed vs BurnIn arrivals_kept", r, b1[1], o.alpha, "B=" + std::to_string(b)),
           ks2_check("Primed vs BurnIn sojourn", t, b1[2], o.alpha, "B=" + std::to_string(b)),
           corr_check("corr(sojourn_k, depart_k)", t, d),
           corr_check("corr(sojourn_k, kept_k)", t, r),
           corr_check("corr(sojourn_k, depart_{k-1})", t, dprev),
           corr_check("corr(sojourn_k, kept_{k-1})", t, rprev),
           corr_check("corr(depart_k, kept_k)", d, r)};
  const auto k1 = ks_one_sample(EmpiricalSample(b1[0]), ExpLaw{rho_minus}, o.alpha);
  const auto k2 = ks_one_sample(EmpiricalSample(b2[0]), ExpLaw{rho_minus}, o.alpha);
  const double move = std::abs(k1.statistic - k2.statistic);
  c.push_back({"burn-in doubling stable", move, k1.critical, move <= k1.critical,
               fmt("KS at B=%g: %.5f, at 2B: %.5f", static_cast<double>(b), k1.statistic, k2.statistic)});
  return c;
}

Checks check_sojourn_barriers(const RunOptions& o, const std::vector<double>& rvec, std::size_t n) {
  const DensityVector rho(rvec);
  const std::size_t k = rho.size();
  const std::size_t b = default_burn_in(rho.min_gap());
  const std::uint64_t seed = check_seed(o, 21);
  std::vector<std::vector<double>> J(k), U(k), V(k);
  for (std::size_t i = 1; i < k; ++i) J[i].resize(n), U[i].resize(n), V[i].resize(n);
  parallel_for(n, [&](std::size_t r) {
    const auto in = sample_nu(rho, {-static_cast<Index>(b), b + 2}, seed, r);
    const auto tr = melonize(in, rho, BoundaryMode::burn(b));
    const auto js = extract_sojourns(tr);
    const Index x = tr.lines[0].last() - 1;
    for (std::size_t i = 1; i < k; ++i) {
      J[i][r] = js[i - 1];
      U[i][r] = tr.u[i - 1].at(x);
      V[i][r] = tr.v[i - 1].at(x);
    }
  }, o.threads);
  Checks c;
  const std::string bi = "B=" + std::to_string(b);
  for (std::size_t i = 1; i < k; ++i) {
    auto ck = ks_check("J^" + std::to_string(i + 1) + " marginal", J[i], ExpLaw{rho[i - 1] - rho[i]}, o.alpha);
    ck.detail += ", " + bi;
    c.push_back(ck);
  }
  for (std::size_t i = 1; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      c.push_back(corr_check("corr(J^" + std::to_string(i + 1) + ", J^" + std::to_string(j + 1) + ")", J[i], J[j]));
  for (std::size_t i = 1; i < k; ++i) {
    c.push_back(ks_check("v^" + std::to_string(i + 1) + " marginal", V[i], ExpLaw{rho[i - 1]}, o.alpha));
    c.push_back(ks_check("u^" + std::to_string(i + 1) + " marginal", U[i], ExpLaw{rho[i]}, o.alpha));
  }
  return c;
}

Checks check_burke(const RunOptions& o, const std::vector<double>& rvec, double rho0, std::size_t n) {
  const DensityVector rho(rvec);
  if (!(rho0 > rho[0])) throw std::invalid_argument("burke: rho0 must exceed rho_1");
  const std::size_t k = rho.size();
  const std::size_t b = default_burn_in(rho0 - rho[0]);
  const std::uint64_t seed = check_seed(o, 22);
  std::vector<std::vector<double>> out(k, std::vector<double>(n));
  parallel_for(n, [&](std::size_t r) {
    const Index base = -static_cast<Index>(b);
    const auto ens = sample_mu(rho, {base, b + 1}, seed, r);
    Stream g(seed, {0xB0, r});
    const auto i0 = exp_window(g, rho0, base, b + 1);
    for (std::size_t i = 0; i < k; ++i) out[i][r] = depart(i0, ens[i], BoundaryMode::burn(b)).values.back();
  }, o.threads);
  Checks c;
  for (std::size_t i = 0; i < k; ++i) {
    auto ck = ks_check("D(I0, line " + std::to_string(i + 1) + ") marginal", out[i], ExpLaw{rho[i]}, o.alpha);
    ck.detail += ", B=" + std::to_string(b);
    c.push_back(ck);
  }
  return c;
}

Checks check_sh_marginal(const RunOptions& o, const std::vector<double>& mus, std::size_t n, double step) {
  Checks c;
  const std::uint64_t seed = check_seed(o, 23);
  for (std::size_t m = 0; m < mus.size(); ++m) {
    std::vector<double> inc(n);
    std::vector<char> pinned(n);
    parallel_for(n, [&](std::size_t r) {
      const auto s = sample_sh_fdd({mus[m]}, 1.0, step, 0.0, stream_key(seed, {m}), r);
      const auto& p = s.ens[0];
      inc[r] = p(1.0) - p(0.0);
      pinned[r] = p(0.0) == 0.0;
    }, o.threads);
    c.push_back(ks_check(fmt("G_%g increment over [0,1]", mus[m]), inc, NormalLaw{mus[m], 4.0}, o.alpha));
    const auto bad = static_cast<double>(std::count(pinned.begin(), pinned.end(), 0));
    c.push_back({fmt("G_%g(0) = 0 exactly", mus[m]), bad, 0.0, bad == 0.0, "replicas with nonzero value at 0"});
  }
  return c;
}

namespace {

struct ShDraws {
  std::vector<std::vector<double>> at;  // per component value at x
  std::size_t excluded = 0;
};

// Continuum draws of each component at x, excluding replicas failing the gate.
ShDraws sh_draws(const std::vector<double>& drifts, double x, double x0, double step, double gate,
                 std::uint64_t seed, std::size_t n, unsigned threads, double scale = 1.0) {
  std::vector<std::vector<double>> v(drifts.size(), std::vector<double>(n));
  std::vector<char> ok(n);
  parallel_for(n, [&](std::size_t r) {
    const auto s = sample_sh_fdd(drifts, x0, step, gate, seed, r);
    ok[r] = s.local;
    for (std::size_t i = 0; i < drifts.size(); ++i) v[i][r] = scale * s.ens[i](x);
  }, threads);
  ShDraws d;
  d.at.resize(drifts.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (!ok[r]) {
      ++d.excluded;
      continue;
    }
    for (std::size_t i = 0; i < drifts.size(); ++i) d.at[i].push_back(v[i][r]);
  }
  return d;
}

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::string exclusion(std::size_t ex, std::size_t n) {
  return fmt("gate exclusion %.4f", static_cast<double>(ex) / static_cast<double>(n));
}

}  // namespace

Checks check_cross_sampler(const RunOptions& o, double N, std::size_t n, double step, double gate) {
  const std::uint64_t seed = check_seed(o, 24);
  SamplerConfig cfg;
  cfg.seed = stream_key(seed, {1});
  cfg.N = N;
  cfg.mu_grid = {0.0, 1.0};
  cfg.x0 = 1.0;
  std::vector<double> g0(n), g1(n);
  parallel_for(n, [&](std::size_t r) {
    const auto s = sample_GN(cfg, r);
    g0[r] = s.paths[0](1.0);
    g1[r] = s.paths[1](1.0);
  }, o.threads);
  const auto sh = sh_draws({0.0, 1.0}, 1.0, 1.0, step, gate, stream_key(seed, {2}), n, o.threads);
  const std::string ex = exclusion(sh.excluded, n);
  return {ks2_check("G_0(1): prelimit vs continuum", g0, sh.at[0], o.alpha, ex),
          ks2_check("G_1(1): prelimit vs continuum", g1, sh.at[1], o.alpha, ex),
          ks2_check("G_1(1) - G_0(1): prelimit vs continuum", difference(g1, g0), difference(sh.at[1], sh.at[0]),
                    o.alpha, ex)};
}

CheckResult check_monotonicity(const RunOptions& o, double N, const std::vector<double>& grid, std::size_t n) {
  SamplerConfig cfg;
  cfg.seed = check_seed(o, 25);
  cfg.N = N;
  cfg.mu_grid = grid;
  cfg.x0 = 1.0;
  std::vector<char> ok(n);
  parallel_for(n, [&](std::size_t r) {
    const auto s = sample_GN(cfg, r);
    double scale = 1.0;
    for (const auto& p : s.paths)
      for (double v : p.knots) scale = std::max(scale, std::abs(v));
    const double tol = 1e-9 * scale;
    bool good = true;
    const auto& ref = s.paths[0];
    for (std::size_t k = 0; k + 1 < s.paths.size() && good; ++k) {
      const auto& lo = s.paths[k];
      const auto& hi = s.paths[k + 1];
      // Increment ordering over every pair of knots in [-1, 1] is the same as
      // hi - lo being nondecreasing across the knots.
      double prev = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < ref.knots.size(); ++j) {
        if (std::abs(ref.x(j)) > 1.0 + 1e-12) continue;
        const double gap = hi.knots[j] - lo.knots[j];
        if (gap < prev - tol) good = false;
        prev = std::max(prev, gap);
      }
      Stream g(cfg.seed, {0x5A, r, k});
      for (int t = 0; t < 16 && good; ++t) {
        double x1 = between(g, -1.0, 1.0), x2 = between(g, -1.0, 1.0);
        if (x1 > x2) std::swap(x1, x2);
        if (hi(x2) - hi(x1) < lo(x2) - lo(x1) - tol) good = false;
      }
    }
    ok[r] = good;
  }, o.threads);
  const auto holds = static_cast<double>(std::count(ok.begin(), ok.end(), 1));
  const double frac = holds / static_cast<double>(n);
  return {"increment ordering across drifts", frac, 1.0, frac == 1.0,
          fmt("holds in %g of %g replicas, N=%g", holds, static_cast<double>(n), N)};
}

Checks check_epochs(const RunOptions& o, double N, double x0, double mu0, std::size_t n) {
  const std::size_t fine = 40;  // delta = mu0 / 20 over [-mu0, mu0]
  std::vector<double> mus(fine + 1), rho;
  for (std::size_t j = 0; j <= fine; ++j) mus[j] = -mu0 + 2.0 * mu0 * static_cast<double>(j) / static_cast<double>(fine);
  for (double m : mus) rho.push_back(rho_of_mu(m, N));
  const DensityVector dens(rho);
  const Index k = gn_half_width(x0, N);
  const std::uint64_t seed = check_seed(o, 26);
  std::vector<std::size_t> counts(n);
  // changes[s][r]: changes between adjacent points on the subgrid of stride 2^s.
  std::vector<std::array<std::size_t, 3>> changes(n);
  parallel_for(n, [&](std::size_t r) {
    const auto ens = sample_mu(dens, {-k + 1, static_cast<std::size_t>(2 * k)}, seed, r);
    WindowFamily fam;
    for (std::size_t j = 0; j <= fine; ++j) fam.emplace_back(mus[j], ens[j]);
    counts[r] = detect_epochs(fam, -k + 1, k).size();
    for (std::size_t s = 0; s < 3; ++s) {
      const std::size_t stride = std::size_t{1} << s;
      WindowFamily sub;
      for (std::size_t j = 0; j <= fine; j += stride) sub.push_back(fam[j]);
      changes[r][s] = detect_epochs(sub, -k + 1, k).size();
    }
  }, o.threads);

  const std::size_t mmax = *std::max_element(counts.begin(), counts.end());
  std::vector<std::size_t> mg;
  for (std::size_t m = 1; m <= mmax + 1; ++m) mg.push_back(m);
  const auto tail = jump_tail(counts, mg);
  bool mono = true, below = true;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (i > 0 && tail[i] > tail[i - 1]) mono = false;
    const std::size_t m = mg[i];
    if (m >= 3) {
      const double bound = std::ldexp(1.0, 22) * x0 * mu0 / static_cast<double>(m - 2);
      worst_ratio = std::max(worst_ratio, tail[i] / bound);
      if (tail[i] > bound) below = false;
    }
  }
  double p[3];
  const double delta[3] = {2.0 * mu0 / fine, 4.0 * mu0 / fine, 8.0 * mu0 / fine};
  for (std::size_t s = 0; s < 3; ++s) {
    std::size_t tot = 0;
    for (const auto& c : changes) tot += c[s];
    const double pairs = static_cast<double>(fine >> s) * static_cast<double>(n);
    p[s] = static_cast<double>(tot) / pairs;
  }
  std::string curve;
  for (std::size_t i = 0; i < tail.size() && i < 10; ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%sP(>=%zu)=%.4f", i ? " " : "", mg[i], tail[i]);
    curve += buf;
  }
  const bool halving = p[0] < p[1] && p[1] < p[2];
  return {{"epoch count finite", static_cast<double>(mmax), static_cast<double>(fine), mmax <= fine,
           fmt("max count %g over %g replicas, N=%g", static_cast<double>(mmax), static_cast<double>(n), N)},
          {"P(count >= M) nonincreasing", mono ? 0.0 : 1.0, 0.0, mono, curve},
          {"P(count >= M) below 2^22 x0 mu0 / (M - 2)", worst_ratio, 1.0, below, "largest tail / bound ratio"},
          {"change probability decreases as delta halves", p[0] / p[1], 1.0, halving,
           fmt("p(%.2f)=%.4f p(%.2f)=%.4f", delta[2], p[2], delta[1], p[1]) +
               fmt(" p(%.2f)=%.4f; slope p/delta at 0.05 = %.3f", delta[0], p[0], p[0] / delta[0])}};
}

Checks check_scale_invariance(const RunOptions& o, double c, std::size_t n, double step, double gate) {
  const std::uint64_t seed = check_seed(o, 27);
  const double mu = 0.5;
  const double c2 = c * c;
  // Reference at x = 1; transformed c G_{c mu}(x / c^2) on the grid step / c^2.
  const auto ref1 = sh_draws({mu}, 1.0, 1.0, step, 0.0, stream_key(seed, {1}), n, o.threads);
  const auto tr1 = sh_draws({c * mu}, 1.0 / c2, 1.0 / c2, step / c2, 0.0, stream_key(seed, {2}), n, o.threads, c);
  const auto ref2 = sh_draws({0.0, 1.0}, 1.0, 1.0, step, gate, stream_key(seed, {3}), n, o.threads);
  const auto tr2 = sh_draws({0.0, c}, 1.0 / c2, 1.0 / c2, step / c2, gate / c2, stream_key(seed, {4}), n, o.threads, c);
  return {ks2_check(fmt("c G_{c mu}(x/c^2) vs G_mu(x), mu=%g", mu), tr1.at[0], ref1.at[0], o.alpha),
          ks2_check("pair difference at drifts (0, 1)", difference(tr2.at[1], tr2.at[0]),
                    difference(ref2.at[1], ref2.at[0]), o.alpha,
                    exclusion(tr2.excluded, n) + " / " + exclusion(ref2.excluded, n))};
}

Checks check_lpp(const RunOptions& o, std::size_t replicas, double n_small, double n_large) {
  const std::uint64_t seed = check_seed(o, 28);
  const double rho = 0.4;
  const std::size_t side = 100, grids = 100;
  std::vector<double> row(grids * side), resid(grids);
  parallel_for(grids, [&](std::size_t r) {
    const auto f = busemann_stationary_grid(rho, side, side, seed, r);
    for (std::size_t i = 1; i <= side; ++i) row[r * side + (i - 1)] = f.h(i, side);
    resid[r] = f.max_face_residual();
  }, o.threads);
  const auto ref = sample_mu(DensityVector({rho}), {0, grids * side}, stream_key(seed, {1}), 0);
  const double res = *std::max_element(resid.begin(), resid.end());

  auto direction = [&](double nn, std::uint64_t tag) {
    std::vector<double> b(replicas);
    parallel_for(replicas, [&](std::size_t r) {
      b[r] = busemann_direction_limit(0.5, nn, {0, 0}, {1, 0}, stream_key(seed, {tag}), r);
    }, o.threads);
    return b;
  };
  const auto bs = direction(n_small, 2);
  const auto bl = direction(n_large, 3);
  const auto ks_s = ks_one_sample(EmpiricalSample(bs), ExpLaw{0.5}, o.alpha);
  const auto ks_l = ks_one_sample(EmpiricalSample(bl), ExpLaw{0.5}, o.alpha);
  // Stationary-grid draws at rho = 1/2 for the two-sample comparison.
  std::vector<double> st(replicas);
  parallel_for(replicas, [&](std::size_t r) {
    st[r] = busemann_stationary_grid(0.5, 1, 1, stream_key(seed, {4}), r).h(1, 1);
  }, o.threads);
  const auto t_s = ks_two_sample(EmpiricalSample(bs), EmpiricalSample(st), o.alpha);
  const auto t_l = ks_two_sample(EmpiricalSample(bl), EmpiricalSample(st), o.alpha);
  return {ks2_check("stationary row increments vs sample_mu", row, ref[0].values, o.alpha, fmt("rho=%g", rho)),
          {"per-face cocycle residual", res, 1e-12, res <= 1e-12, fmt("%g grids of %g x %g", grids, side, side)},
          {"direction-limit KS decreases as n doubles", ks_l.statistic, ks_s.statistic,
           ks_l.statistic < ks_s.statistic,
           fmt("KS vs Exp(1/2): n=%g %.5f, n=%g %.5f", n_small, ks_s.statistic, n_large, ks_l.statistic) +
               fmt("; vs stationary grid %.5f -> %.5f; mean %.4f -> %.4f", t_s.statistic, t_l.statistic, mean(bs),
                   mean(bl))}};
}

CheckResult check_lemma_dis(const RunOptions& o, Index n, std::size_t replicas) {
  const std::uint64_t seed = check_seed(o, 29);
  std::vector<DiscreteGap> res(replicas);
  parallel_for(replicas, [&](std::size_t r) {
    Stream g(seed, {r});
    const Index base = -2 * n - 2;
    const auto len = static_cast<std::size_t>(4 * n + 3);
    const auto i1 = exp_window(g, 0.6, base, len);
    const auto i2 = exp_window(g, 0.4, base, len);
    res[r] = discrete_continuous_gap(i1, i2, n);
  }, o.threads);
  std::size_t gated = 0, holds = 0;
  double worst = 0.0;
  for (const auto& d : res) {
    if (!d.local) continue;
    ++gated;
    holds += d.holds();
    worst = std::max(worst, d.gap / d.bound);
  }
  const double frac = gated ? static_cast<double>(holds) / static_cast<double>(gated) : 0.0;
  return {"d_n(m D(I1,I2), Q(m I1, m I2)) <= 16 sup(|I1|+|I2|)", frac, 1.0, gated > 0 && holds == gated,
          fmt("holds in %g of %g gated replicas; ", static_cast<double>(holds), static_cast<double>(gated)) +
              exclusion(replicas - gated, replicas) + fmt("; max gap/bound %.4f", worst)};
}

Checks check_two_line_burke(const RunOptions& o, std::size_t n, double step) {
  const std::uint64_t seed = check_seed(o, 30);
  const double gate = 25.0;
  const std::size_t intervals = 10;
  std::vector<std::vector<double>> inc(intervals, std::vector<double>(n));
  std::vector<char> ok(n);
  parallel_for(n, [&](std::size_t r) {
    const PathEnsemble w({sample_two_sided_bm(0.0, 50.0, 50.0, step, seed, r, 0),
                          sample_two_sided_bm(1.0, 50.0, 50.0, step, seed, r, 1)});
    const auto q = q_k_gated(w, gate);
    ok[r] = q.local;
    for (std::size_t k = 0; k < intervals; ++k) {
      const double a = static_cast<double>(k);
      inc[k][r] = q.ens[1](a + 1.0) - q.ens[1](a);
    }
  }, o.threads);
  std::size_t ex = 0;
  std::vector<std::vector<double>> kept(intervals);
  for (std::size_t r = 0; r < n; ++r) {
    if (!ok[r]) {
      ++ex;
      continue;
    }
    for (std::size_t k = 0; k < intervals; ++k) kept[k].push_back(inc[k][r]);
  }
  Checks c;
  for (std::size_t k = 0; k < intervals; ++k) {
    auto ck = ks_check(fmt("Q(X1, X2) increment over [%g, %g]", static_cast<double>(k), static_cast<double>(k + 1)),
                       kept[k], NormalLaw{1.0, 4.0}, o.alpha);
    ck.detail += ", " + exclusion(ex, n);
    c.push_back(ck);
  }
  return c;
}

Checks check_stats_selftest(const RunOptions& o, std::size_t meta, std::size_t n) {
  const std::uint64_t seed = check_seed(o, 31);
  std::vector<char> rej1(meta), rej2(meta);
  parallel_for(meta, [&](std::size_t m) {
    Stream g(seed, {m});
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = g.exponential(1.0);
    for (auto& x : b) x = g.exponential(1.0);
    rej1[m] = !ks_one_sample(EmpiricalSample(a), ExpLaw{1.0}, o.alpha).pass;
    rej2[m] = !ks_two_sample(EmpiricalSample(a), EmpiricalSample(b), o.alpha).pass;
  }, o.threads);
  const double mm = static_cast<double>(meta);
  const double limit = mm * o.alpha + 3.0 * std::sqrt(mm * o.alpha * (1.0 - o.alpha));
  const auto r1 = static_cast<double>(std::count(rej1.begin(), rej1.end(), 1));
  const auto r2 = static_cast<double>(std::count(rej2.begin(), rej2.end(), 1));
  Stream g(seed, {0xFFFF});
  std::vector<double> e1(10000);
  for (auto& x : e1) x = g.exponential(1.0);
  const auto power = ks_one_sample(EmpiricalSample(e1), ExpLaw{2.0}, o.alpha);
  return {{"one-sample KS rejection count under the null", r1, limit, r1 <= limit,
           fmt("%g of %g meta-replicas, n=%g", r1, mm, static_cast<double>(n))},
          {"two-sample KS rejection count under the null", r2, limit, r2 <= limit,
           fmt("%g of %g meta-replicas, n=%g", r2, mm, static_cast<double>(n))},
          {"KS rejects Exp(1) sample against Exp(2)", power.statistic, power.critical, !power.pass, "n=10000"}};
}

}  // namespace shlab
