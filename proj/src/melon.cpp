// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/melon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shlab {

namespace {

using Vec = std::vector<double>;

Window trim(const Window& w, std::size_t b) {
  if (b == 0) return w;
  if (b >= w.size()) throw std::invalid_argument("burn-in leaves no output");
  return w.slice(w.base + static_cast<Index>(b), w.last());
}

// Right-nested tandem over lines [lo, hi), raw seed, no trimming.
Vec tandem_raw(const std::vector<Window>& lines, std::size_t lo, std::size_t hi, double j) {
  Vec out = lines[hi - 1].values;
  Vec tmp(out.size());
  for (std::size_t k = hi - 1; k-- > lo;) {
    kernel::queue(lines[k].values, out, j, tmp.data(), nullptr, nullptr);
    out.swap(tmp);
  }
  return out;
}

void check_lines(const LineEnsemble& ens) {
  if (ens.lines.empty()) throw std::invalid_argument("empty ensemble");
  for (const auto& w : ens.lines)
    if (!w.same_range(ens.lines.front())) throw std::invalid_argument("lines on different ranges");
}

}  // namespace

Window d_tandem(const LineEnsemble& lines, BoundaryMode mode) {
  check_lines(lines);
  const Index base = lines[0].base;
  return trim(Window(base, tandem_raw(lines.lines, 0, lines.size(), mode.seed())), mode.trim());
}

LineEnsemble md_map(const LineEnsemble& ens, BoundaryMode mode) {
  check_lines(ens);
  std::vector<Window> out;
  out.reserve(ens.size());
  for (std::size_t i = 1; i <= ens.size(); ++i)
    out.push_back(trim(Window(ens[0].base, tandem_raw(ens.lines, 0, i, mode.seed())), mode.trim()));
  return LineEnsemble(std::move(out), true);
}

Sorted sigma_i(const LineEnsemble& ens, std::size_t i, const std::vector<double>& density,
               BoundaryMode mode) {
  check_lines(ens);
  if (i < 1 || i >= ens.size()) throw std::out_of_range("sigma_i: index out of range");
  if (density.size() != ens.size()) throw std::invalid_argument("sigma_i: density count mismatch");
  if (mode.kind == BoundaryMode::Kind::BurnIn)
    throw std::invalid_argument("sigma_i: burn-in applies to whole constructions");
  Sorted out{ens, density};
  if (!(density[i - 1] > density[i])) return out;
  auto& lo = out.ens.lines[i - 1];
  auto& hi = out.ens.lines[i];
  Vec d(lo.size()), r(lo.size());
  kernel::queue(lo.values, hi.values, mode.seed(), d.data(), r.data(), nullptr);
  lo.values = std::move(d);
  hi.values = std::move(r);
  std::swap(out.density[i - 1], out.density[i]);
  out.ens.ordered = false;
  return out;
}

std::vector<double> empirical_densities(const LineEnsemble& ens) {
  std::vector<double> out;
  for (const auto& w : ens.lines) {
    double s = 0.0;
    for (double v : w.values) s += v;
    out.push_back(static_cast<double>(w.size()) / s);
  }
  return out;
}

double MelonTrace::j_at(std::size_t i, Index x) const {
  if (i < 2 || i - 2 >= J.size()) throw std::out_of_range("j_at: line index out of range");
  if (x < valid_from) throw std::out_of_range("j_at: position inside burn-in region");
  return J[i - 2].at(x);
}

MelonTrace melonize(const LineEnsemble& inputs, const DensityVector& rho, BoundaryMode mode) {
  check_lines(inputs);
  const std::size_t n = inputs.size();
  if (rho.size() != n) throw std::invalid_argument("melonize: density count mismatch");
  if (mode.trim() >= inputs[0].size()) throw std::invalid_argument("melonize: window too short for burn-in");
  const double j = mode.seed();
  const BoundaryMode inner = mode.kind == BoundaryMode::Kind::Primed ? mode : BoundaryMode::empty();
  const std::size_t b = mode.trim();
  const Index base = inputs[0].base;
  const std::size_t len = inputs[0].size();

  std::vector<Window> f{inputs[0]}, u, v, J;
  Sorted cur{inputs, rho.rho()};
  for (std::size_t i = 2; i <= n; ++i) {
    // I-hat^i = sigma_1 ... sigma_{i-2} I-hat^{i-1}, rightmost first.
    if (i >= 3)
      for (std::size_t k = i - 2; k >= 1; --k) cur = sigma_i(cur.ens, k, cur.density, inner);
    Vec ui = tandem_raw(cur.ens.lines, 1, i, j);
    const Vec& vi = cur.ens[0].values;
    Vec fi(len), ji(len);
    kernel::queue(vi, ui, j, fi.data(), nullptr, ji.data());
    f.emplace_back(base, std::move(fi));
    u.emplace_back(base, std::move(ui));
    v.push_back(cur.ens[0]);
    J.emplace_back(base, std::move(ji));
  }
  MelonTrace t;
  std::vector<Window> lines;
  for (auto& w : f) lines.push_back(trim(w, b));
  t.lines = LineEnsemble(std::move(lines), true);
  for (auto& w : u) t.u.push_back(trim(w, b));
  for (auto& w : v) t.v.push_back(trim(w, b));
  for (auto& w : J) t.J.push_back(trim(w, b));
  t.valid_from = base + static_cast<Index>(b);
  return t;
}

std::vector<double> extract_sojourns(const MelonTrace& trace, Index x) {
  std::vector<double> out;
  for (std::size_t i = 2; i <= trace.lines.size(); ++i) out.push_back(trace.j_at(i, x));
  return out;
}

std::vector<double> extract_sojourns(const MelonTrace& trace) {
  const Index last = trace.lines[0].last();
  return extract_sojourns(trace, last > trace.lines[0].first() ? last - 1 : last);
}

LineEnsemble sort_insert(const LineEnsemble& inputs, const DensityVector& rho, const SeedFn& seed,
                         std::vector<Window>* sojourns) {
  check_lines(inputs);
  const std::size_t n = inputs.size();
  if (rho.size() != n) throw std::invalid_argument("sort_insert: density count mismatch");
  const std::size_t len = inputs[0].size();
  const Index base = inputs[0].base;
  std::vector<Vec> w;
  std::vector<double> dens;
  std::vector<Window> top;
  Vec d(len), r(len), t(len);
  if (sojourns) sojourns->clear();
  for (std::size_t k = 0; k < n; ++k) {
    w.push_back(inputs[k].values);
    dens.push_back(rho[k]);
    for (std::size_t p = k; p-- > 0;) {
      const double gap = dens[p] - dens[p + 1];
      if (!(gap > 0.0)) continue;
      const bool last = p == 0;
      kernel::queue(w[p], w[p + 1], seed(gap), d.data(), r.data(), last ? t.data() : nullptr);
      w[p].swap(d);
      w[p + 1].swap(r);
      std::swap(dens[p], dens[p + 1]);
      if (last && sojourns) sojourns->emplace_back(base, t);
    }
    top.emplace_back(base, w[0]);
  }
  return LineEnsemble(std::move(top), true);
}

LineEnsemble sort_insert(const LineEnsemble& inputs, const DensityVector& rho, BoundaryMode mode,
                         std::vector<Window>* sojourns) {
  const double j = mode.seed();
  auto out = sort_insert(inputs, rho, [j](double) { return j; }, sojourns);
  const std::size_t b = mode.trim();
  if (b == 0) return out;
  for (auto& l : out.lines) l = trim(l, b);
  if (sojourns)
    for (auto& l : *sojourns) l = trim(l, b);
  return out;
}

std::pair<PiecewiseLinearPath, PiecewiseLinearPath> alpha_pair(const PiecewiseLinearPath& f,
                                                               const PiecewiseLinearPath& g) {
  if (!f.same_grid(g)) throw std::invalid_argument("alpha_pair: grids differ");
  const std::size_t n = f.knots.size();
  std::vector<double> up(n), down(n);
  double e = 0.0;  // E(f,g)(t) = max_{s<=t} (g - f)(s), attained at knots
  for (std::size_t j = 0; j < n; ++j) {
    e = std::max(e, g.knots[j] - f.knots[j]);
    up[j] = f.knots[j] + e;
    down[j] = g.knots[j] - e;
  }
  return {PiecewiseLinearPath(f.left_end, f.spacing, std::move(up)),
          PiecewiseLinearPath(f.left_end, f.spacing, std::move(down))};
}

PathEnsemble packed_melon(const PathEnsemble& paths) {
  for (const auto& p : paths.lines)
    if (std::abs(p.left_end) > 1e-12 || p.knots.front() != 0.0)
      throw std::invalid_argument("packed_melon: paths must start at 0 with value 0");
  std::vector<PiecewiseLinearPath> x = paths.lines;
  for (std::size_t k = 1; k < x.size(); ++k) {
    for (std::size_t p = k; p-- > 0;) {
      auto [up, down] = alpha_pair(x[p], x[p + 1]);
      x[p] = std::move(up);
      x[p + 1] = std::move(down);
    }
  }
  return PathEnsemble(std::move(x), true);
}

}  // namespace shlab
