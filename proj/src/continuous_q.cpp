// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/continuous_q.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shlab/queueing.hpp"

namespace shlab {

MaxGap running_max_gap(const PiecewiseLinearPath& f, double t) {
  if (!f.covers(t, t)) throw std::out_of_range("running_max_gap: t outside domain");
  // min of a piecewise-linear function over [left, t] sits at a knot or at t.
  double best = std::numeric_limits<double>::infinity();
  double where = t;
  for (std::size_t j = 0; j < f.knots.size() && f.x(j) <= t; ++j) {
    if (f.knots[j] < best) {
      best = f.knots[j];
      where = f.x(j);
    }
  }
  const double ft = f(t);
  if (ft < best) {
    best = ft;
    where = t;
  }
  return {ft - best, where};
}

namespace {

// Position of 0 on the grid: knots [0, z] lie at x <= 0; h0 is h(0).
struct Origin {
  std::size_t z;
  bool on_knot;
};

Origin locate_origin(const PiecewiseLinearPath& p) {
  if (!p.covers(0.0, 0.0)) throw std::invalid_argument("q_map: domain must contain 0");
  const double u = -p.left_end / p.spacing;
  const double r = std::round(u);
  if (std::abs(u - r) <= 1e-9) return {static_cast<std::size_t>(r), true};
  return {static_cast<std::size_t>(std::floor(u)), false};
}

}  // namespace

PiecewiseLinearPath q_map(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g) {
  if (!f.same_grid(g)) throw std::invalid_argument("q_map: mismatched domains");
  const std::size_t n = f.knots.size();
  std::vector<double> h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = f.knots[j] - g.knots[j];
  const Origin o = locate_origin(f);
  const double h0 = o.on_knot ? h[o.z] : f(0.0) - g(0.0);

  // lmin[j] = min h on [left, x_j]; rmin[j] = min h on [x_j, 0] for x_j <= 0.
  std::vector<double> lmin(n);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) lmin[j] = m = std::min(m, h[j]);
  std::vector<double> rmin(o.z + 1);
  m = h0;
  for (std::size_t j = o.z + 1; j-- > 0;) rmin[j] = m = std::min(m, h[j]);
  const double min_left_of_0 = o.on_knot ? lmin[o.z] : std::min(lmin[o.z], h0);
  const double w0 = h0 - min_left_of_0;  // W_0(f - g)

  std::vector<double> q(n);
  double inf_0t = h0;  // inf_{0<=s<=t} (h(s) - h(0)) + h(0)
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.x(j);
    if (o.on_knot ? j < o.z : x < 0.0) {
      const double wt = h[j] - lmin[j];
      const double inc = rmin[j] - h[j];  // inf_{t<s<=0} of the increment of h
      q[j] = f.knots[j] - kernel::neg_part(wt + inc);
    } else {
      inf_0t = std::min(inf_0t, h[j]);
      q[j] = f.knots[j] + kernel::neg_part(w0 + inf_0t - h0);
    }
  }
  return PiecewiseLinearPath(f.left_end, f.spacing, std::move(q));
}

PathEnsemble q_k(const PathEnsemble& ens) {
  if (ens.lines.empty()) throw std::invalid_argument("q_k: empty ensemble");
  if (ens.size() == 1) return ens;
  PathEnsemble rest(std::vector<PiecewiseLinearPath>(ens.lines.begin() + 1, ens.lines.end()));
  const PathEnsemble inner = q_k(rest);
  std::vector<PiecewiseLinearPath> out{ens[0]};
  for (const auto& c : inner.lines) out.push_back(q_map(ens[0], c));
  return PathEnsemble(std::move(out), true);
}

LocalityReport locality_check(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("locality_check: n must be positive");
  if (!f.covers(-2 * n, n) || !g.covers(-2 * n, n))
    throw std::invalid_argument("locality_check: domain must cover [-2n, n]");
  const MaxGap w = running_max_gap(path_difference(f, g), -n);
  const double e = 1e-9 * f.spacing;
  return {n, w.location, w.location >= -2 * n - e && w.location <= -n + e};
}

namespace {

GatedEnsemble gated(const PathEnsemble& ens, double n) {
  if (ens.size() == 1) return {ens, true, 0.0};
  PathEnsemble rest(std::vector<PiecewiseLinearPath>(ens.lines.begin() + 1, ens.lines.end()));
  GatedEnsemble inner = gated(rest, n);
  GatedEnsemble out{PathEnsemble({ens[0]}), inner.local, inner.worst_location};
  for (const auto& c : inner.ens.lines) {
    const auto rep = locality_check(ens[0], c, n);
    if (!rep.inside && out.local) {
      out.local = false;
      out.worst_location = rep.argmax_location;
    }
    out.ens.lines.push_back(q_map(ens[0], c));
  }
  out.ens.ordered = true;
  return out;
}

}  // namespace

GatedEnsemble q_k_gated(const PathEnsemble& ens, double n) {
  if (ens.lines.empty()) throw std::invalid_argument("q_k: empty ensemble");
  return gated(ens, n);
}

DiscreteGap discrete_continuous_gap(const Window& i1, const Window& i2, Index n) {
  if (n < 1) throw std::invalid_argument("discrete_continuous_gap: n < 1");
  if (!i1.same_range(i2)) throw std::invalid_argument("discrete_continuous_gap: windows differ");
  if (!i1.contains(-2 * n - 2) || !i1.contains(2 * n))
    throw std::invalid_argument("discrete_continuous_gap: windows must cover [-2n-2, 2n]");
  const auto d = depart(i1, i2, BoundaryMode::empty());
  const auto f = interpolate(i1);
  const auto g = interpolate(i2);
  const double nn = static_cast<double>(n);
  const auto rep = locality_check(f, g, nn);
  const double gap = metric_dn(interpolate(d), q_map(f, g), nn);
  double sup = 0.0;
  for (Index i = -2 * n - 2; i <= 2 * n; ++i) sup = std::max(sup, std::abs(i1.at(i)) + std::abs(i2.at(i)));
  return {gap, 16.0 * sup, rep.inside};
}

namespace {

void check_sorted(const std::vector<double>& mus) {
  for (std::size_t j = 1; j < mus.size(); ++j)
    if (!(mus[j] > mus[j - 1])) throw std::invalid_argument("detect_epochs: mu grid not increasing");
}

}  // namespace

std::vector<double> detect_epochs(const PathFamily& family, double x0, double tol) {
  std::vector<double> mus;
  for (const auto& [mu, p] : family) mus.push_back(mu);
  check_sorted(mus);
  if (tol < 0.0) {
    double scale = 0.0;
    for (const auto& [mu, p] : family)
      for (std::size_t j = 0; j < p.knots.size(); ++j)
        if (std::abs(p.x(j)) <= x0) scale = std::max(scale, std::abs(p.knots[j]));
    tol = 1e-9 * std::max(scale, 1.0);
  }
  std::vector<double> out;
  for (std::size_t j = 1; j < family.size(); ++j)
    if (metric_dn(family[j].second, family[j - 1].second, x0) > tol) out.push_back(family[j].first);
  return out;
}

std::vector<double> detect_epochs(const WindowFamily& family, Index lo, Index hi, double tol) {
  std::vector<double> mus;
  for (const auto& [mu, w] : family) mus.push_back(mu);
  check_sorted(mus);
  if (tol < 0.0) {
    double scale = 0.0;
    for (const auto& [mu, w] : family)
      for (Index i = lo; i <= hi; ++i) scale = std::max(scale, std::abs(w.at(i)));
    tol = 1e-9 * std::max(scale, 1.0);
  }
  std::vector<double> out;
  for (std::size_t j = 1; j < family.size(); ++j) {
    double d = 0.0;
    for (Index i = lo; i <= hi; ++i)
      d = std::max(d, std::abs(family[j].second.at(i) - family[j - 1].second.at(i)));
    if (d > tol) out.push_back(family[j].first);
  }
  return out;
}

}  // namespace shlab
