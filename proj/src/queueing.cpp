// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shlab {

BoundaryMode BoundaryMode::primed(double j) {
  if (!(j >= 0.0) || !std::isfinite(j)) throw std::invalid_argument("primed: J_prev must be finite and >= 0");
  BoundaryMode m;
  m.kind = Kind::Primed;
  m.j_prev = j;
  return m;
}

BoundaryMode BoundaryMode::burn(std::size_t b) {
  if (b == 0) throw std::invalid_argument("burn-in: B must be positive");
  BoundaryMode m;
  m.kind = Kind::BurnIn;
  m.burn_in = b;
  return m;
}

namespace kernel {

double queue(std::span<const double> s, std::span<const double> a, double j_prev,
             double* d, double* r, double* t) {
  double J = j_prev;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = J - a[i];
    const double e = neg_part(x);
    J = (x > 0.0 ? x : 0.0) + s[i];
    if (d) d[i] = e + s[i];
    if (r) r[i] = a[i] - e;
    if (t) t[i] = J;
  }
  return J;
}

}  // namespace kernel

namespace {

void check_pair(const Window& s, const Window& a, BoundaryMode mode) {
  if (!s.same_range(a)) throw std::invalid_argument("queue: service and arrival windows differ");
  if (mode.trim() >= s.size()) throw std::invalid_argument("queue: burn-in leaves no output");
}

Window trimmed(std::vector<double> v, Index base, std::size_t b) {
  v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(b));
  return Window(base + static_cast<Index>(b), std::move(v));
}

}  // namespace

QueueOutput run_queue(const Window& s, const Window& a, BoundaryMode mode) {
  check_pair(s, a, mode);
  const std::size_t n = s.size();
  std::vector<double> d(n), r(n), t(n), w(n), e(n);
  double J = mode.seed();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = J - a.values[i];
    w[i] = x > 0.0 ? x : 0.0;
    e[i] = kernel::neg_part(x);
    d[i] = e[i] + s.values[i];
    r[i] = a.values[i] - e[i];
    J = t[i] = w[i] + s.values[i];
  }
  const std::size_t b = mode.trim();
  return {trimmed(std::move(w), s.base, b), trimmed(std::move(d), s.base, b),
          trimmed(std::move(t), s.base, b), trimmed(std::move(r), s.base, b),
          trimmed(std::move(e), s.base, b)};
}

Window waiting_times(const Window& s, const Window& a, BoundaryMode mode) {
  return run_queue(s, a, mode).waiting;
}

Window depart(const Window& s, const Window& a, BoundaryMode mode) {
  check_pair(s, a, mode);
  std::vector<double> d(s.size());
  kernel::queue(s.values, a.values, mode.seed(), d.data(), nullptr, nullptr);
  return trimmed(std::move(d), s.base, mode.trim());
}

Window sojourn(const Window& s, const Window& a, BoundaryMode mode) {
  check_pair(s, a, mode);
  std::vector<double> t(s.size());
  kernel::queue(s.values, a.values, mode.seed(), nullptr, nullptr, t.data());
  return trimmed(std::move(t), s.base, mode.trim());
}

Window arrivals_kept(const Window& s, const Window& a, BoundaryMode mode) {
  check_pair(s, a, mode);
  std::vector<double> r(s.size());
  kernel::queue(s.values, a.values, mode.seed(), nullptr, r.data(), nullptr);
  return trimmed(std::move(r), s.base, mode.trim());
}

Window idle_times(const Window& s, const Window& a, BoundaryMode mode) {
  return run_queue(s, a, mode).idle;
}

Window psi_m(double j_prev, const Window& s, const Window& a) {
  if (!s.same_range(a)) throw std::invalid_argument("psi_m: windows differ");
  std::vector<double> out(s.size());
  double drift = 0.0;  // S^{m,j-1}(s - a)
  double inf = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double y = j_prev + drift - a.values[j];
    inf = j == 0 ? y : std::min(inf, y);
    out[j] = kernel::neg_part(inf);
    drift += s.values[j] - a.values[j];
  }
  return Window(s.base, std::move(out));
}

double phi_mn(const Window& w) {
  if (w.values.empty()) throw std::invalid_argument("phi_mn: empty window");
  double s = 0.0, sup = -std::numeric_limits<double>::infinity();
  for (double v : w.values) sup = std::max(sup, s += v);
  return std::max(sup, 0.0);
}

double mx_mn(const Window& w) {
  if (w.values.empty()) throw std::invalid_argument("mx_mn: empty window");
  double m = 0.0;
  for (double v : w.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace shlab
