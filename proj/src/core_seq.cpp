// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/core_seq.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shlab {

Window::Window(Index b, std::vector<double> v) : base(b), values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("window: empty");
}

Window Window::constant(Index base, std::size_t length, double c) {
  return Window(base, std::vector<double>(length, c));
}

double Window::at(Index i) const {
  if (!contains(i)) throw std::out_of_range("window: index " + std::to_string(i) + " outside range");
  return values[static_cast<std::size_t>(i - base)];
}

double& Window::at(Index i) {
  if (!contains(i)) throw std::out_of_range("window: index " + std::to_string(i) + " outside range");
  return values[static_cast<std::size_t>(i - base)];
}

Window Window::slice(Index lo, Index hi) const {
  if (lo > hi || !contains(lo) || !contains(hi)) throw std::out_of_range("window: bad slice");
  auto b = values.begin() + (lo - base);
  return Window(lo, std::vector<double>(b, b + (hi - lo + 1)));
}

Window Window::shifted(double c) const {
  Window out = *this;
  for (auto& v : out.values) v += c;
  return out;
}

namespace {

template <class Op>
Window zip(const Window& a, const Window& b, Op op) {
  if (!a.same_range(b)) throw std::invalid_argument("window: mismatched ranges");
  Window out = a;
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] = op(a.values[j], b.values[j]);
  return out;
}

}  // namespace

Window operator+(const Window& a, const Window& b) { return zip(a, b, std::plus<>()); }
Window operator-(const Window& a, const Window& b) { return zip(a, b, std::minus<>()); }

double partial_sum(const Window& w, Index k, Index l) {
  if (k > l) throw std::invalid_argument("partial_sum: k > l");
  if (!w.contains(k) || !w.contains(l)) throw std::out_of_range("partial_sum: index outside window");
  double s = 0.0;
  for (Index i = k; i <= l; ++i) s += w.values[static_cast<std::size_t>(i - w.base)];
  return s;
}

PiecewiseLinearPath::PiecewiseLinearPath(double left, double h, std::vector<double> k)
    : left_end(left), spacing(h), knots(std::move(k)) {
  if (!(spacing > 0.0)) throw std::invalid_argument("path: spacing must be positive");
  if (knots.empty()) throw std::invalid_argument("path: no knots");
}

namespace {
// Slack for grid coordinates that are products of rescaling.
double grid_eps(const PiecewiseLinearPath& p) { return 1e-9 * p.spacing; }
}  // namespace

bool PiecewiseLinearPath::covers(double a, double b) const {
  const double e = grid_eps(*this);
  return a >= left_end - e && b <= right_end() + e;
}

bool PiecewiseLinearPath::same_grid(const PiecewiseLinearPath& o) const {
  return knots.size() == o.knots.size() &&
         std::abs(left_end - o.left_end) <= 1e-12 * std::max(1.0, std::abs(left_end)) &&
         std::abs(spacing - o.spacing) <= 1e-12 * spacing;
}

double PiecewiseLinearPath::operator()(double t) const {
  if (!covers(t, t)) throw std::out_of_range("path: evaluation outside knot range");
  const double u = (t - left_end) / spacing;
  if (u <= 0.0) return knots.front();
  const auto last = knots.size() - 1;
  if (u >= static_cast<double>(last)) return knots.back();
  const double fl = std::floor(u);
  const auto j = static_cast<std::size_t>(fl);
  const double frac = u - fl;
  if (frac == 0.0) return knots[j];
  return knots[j] + frac * (knots[j + 1] - knots[j]);
}

DensityVector::DensityVector(std::vector<double> rho) : rho_(std::move(rho)) {
  if (rho_.empty()) throw std::invalid_argument("density vector: empty");
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!(rho_[i] > 0.0)) throw std::invalid_argument("density vector: nonpositive density");
    if (i > 0 && !(rho_[i - 1] > rho_[i]))
      throw std::invalid_argument("density vector: not strictly decreasing");
  }
}

double DensityVector::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rho_.size(); ++i) g = std::min(g, rho_[i - 1] - rho_[i]);
  return g;
}

LineEnsemble::LineEnsemble(std::vector<Window> l, bool ord) : lines(std::move(l)), ordered(ord) {
  if (lines.empty()) throw std::invalid_argument("ensemble: no lines");
  for (const auto& w : lines)
    if (!w.same_range(lines.front())) throw std::invalid_argument("ensemble: lines on different ranges");
}

PathEnsemble::PathEnsemble(std::vector<PiecewiseLinearPath> l, bool ord)
    : lines(std::move(l)), ordered(ord) {
  if (lines.empty()) throw std::invalid_argument("ensemble: no paths");
  for (const auto& p : lines)
    if (!p.same_grid(lines.front())) throw std::invalid_argument("ensemble: paths on different grids");
}

PiecewiseLinearPath interpolate(const Window& w) {
  // Knots at base-1 .. last; m(0) = 0 and m(t) - m(t-1) = w(t).
  const Index lo = w.first() - 1;
  if (lo > 0 || w.last() < 0) throw std::invalid_argument("interpolate: 0 not in range");
  std::vector<double> k(w.size() + 1, 0.0);
  const auto zero = static_cast<std::size_t>(-lo);
  double s = 0.0;
  for (std::size_t j = zero + 1; j < k.size(); ++j) {
    s += w.values[j - 1];
    k[j] = s;
  }
  s = 0.0;
  for (std::size_t j = zero; j-- > 0;) {
    s += w.values[j];  // w at index lo + j + 1
    k[j] = -s;
  }
  return PiecewiseLinearPath(static_cast<double>(lo), 1.0, std::move(k));
}

namespace {

// Breakpoints of f - g inside [a, b], endpoints included.
std::vector<double> breakpoints(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g,
                                double a, double b) {
  std::vector<double> xs{a, b};
  for (const auto* p : {&f, &g}) {
    const double j0 = std::ceil((a - p->left_end) / p->spacing);
    const double j1 = std::floor((b - p->left_end) / p->spacing);
    for (double j = std::max(0.0, j0); j <= j1; j += 1.0) xs.push_back(p->left_end + j * p->spacing);
  }
  return xs;
}

}  // namespace

double metric_dn(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("metric_dn: n must be positive");
  if (!f.covers(-n, n) || !g.covers(-n, n)) throw std::invalid_argument("metric_dn: domain too small");
  // |f-g| is piecewise linear; its max over an interval sits at a breakpoint.
  double m = 0.0;
  for (double x : breakpoints(f, g, -n, n)) m = std::max(m, std::abs(f(x) - g(x)));
  return m;
}

double metric_d(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, int n_max) {
  if (n_max < 1) throw std::invalid_argument("metric_d: n_max < 1");
  double s = 0.0;
  for (int i = 1; i <= n_max; ++i) {
    const double di = metric_dn(f, g, i);
    s += std::ldexp(di / (1.0 + di), -i);
  }
  return s;
}

PiecewiseLinearPath scale_path(const PiecewiseLinearPath& f, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("scale_path: tau must be positive");
  return PiecewiseLinearPath(f.left_end / tau, f.spacing / tau, f.knots);
}

PiecewiseLinearPath path_difference(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g) {
  if (!f.same_grid(g)) throw std::invalid_argument("path_difference: grids differ");
  std::vector<double> k(f.knots.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = f.knots[j] - g.knots[j];
  return PiecewiseLinearPath(f.left_end, f.spacing, std::move(k));
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_csv(const Window& w) {
  std::string out = "index_or_x,value\n";
  for (std::size_t j = 0; j < w.size(); ++j)
    out += std::to_string(w.base + static_cast<Index>(j)) + "," + format_double(w.values[j]) + "\n";
  return out;
}

std::string to_csv(const PiecewiseLinearPath& p) {
  std::string out = "index_or_x,value\n";
  for (std::size_t j = 0; j < p.knots.size(); ++j)
    out += format_double(p.x(j)) + "," + format_double(p.knots[j]) + "\n";
  return out;
}

std::string to_json(const Window& w) {
  nlohmann::json j{{"base", w.base}, {"spacing", 1}, {"values", w.values}};
  return j.dump();
}

std::string to_json(const PiecewiseLinearPath& p) {
  nlohmann::json j{{"left_end", p.left_end}, {"spacing", p.spacing}, {"values", p.knots}};
  return j.dump();
}

Window window_from_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  return Window(j.at("base").get<Index>(), j.at("values").get<std::vector<double>>());
}

PiecewiseLinearPath path_from_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  return PiecewiseLinearPath(j.at("left_end").get<double>(), j.at("spacing").get<double>(),
                             j.at("values").get<std::vector<double>>());
}

}  // namespace shlab
