// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shlab/rng.hpp"

namespace shlab {

namespace {
constexpr std::uint64_t kBulk = 11, kSouth = 12, kWest = 13, kDirection = 14;
}  // namespace

LatticeGrid::LatticeGrid(std::size_t a, std::size_t b, std::vector<double> w)
    : n1(a), n2(b), weights(std::move(w)) {
  if (n1 == 0 || n2 == 0 || weights.size() != n1 * n2) throw std::invalid_argument("grid: bad size");
  for (double x : weights)
    if (!(x >= 0.0)) throw std::invalid_argument("grid: negative weight");
}

LatticeGrid LatticeGrid::exponential(std::size_t n1, std::size_t n2, std::uint64_t seed,
                                     std::uint64_t replica) {
  Stream g(seed, {kBulk, replica});
  std::vector<double> w(n1 * n2);
  for (auto& x : w) x = g.exponential(1.0);
  return LatticeGrid(n1, n2, std::move(w));
}

double LatticeGrid::at(Index x, Index y) const {
  if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= n1 || static_cast<std::size_t>(y) >= n2)
    throw std::out_of_range("grid: vertex outside");
  return weights[static_cast<std::size_t>(y) * n1 + static_cast<std::size_t>(x)];
}

double last_passage(const LatticeGrid& grid, Vertex from, Vertex to) {
  if (to.x < from.x || to.y < from.y) throw std::invalid_argument("last_passage: to not north-east of from");
  grid.at(from.x, from.y);
  grid.at(to.x, to.y);
  const auto w = static_cast<std::size_t>(to.x - from.x + 1);
  std::vector<double> row(w, -std::numeric_limits<double>::infinity());
  for (Index y = from.y; y <= to.y; ++y) {
    double left = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < w; ++k) {
      double best = std::max(left, row[k]);
      if (y == from.y && k == 0) best = 0.0;
      row[k] = left = grid.at(from.x + static_cast<Index>(k), y) + best;
    }
  }
  return row.back();
}

BusemannField::BusemannField(double rho, std::size_t n1, std::size_t n2, std::uint64_t seed,
                             std::uint64_t replica)
    : rho_(rho), n1_(n1), n2_(n2) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("busemann grid: rho outside (0, 1)");
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("busemann grid: empty");
  h_.resize(n1 * (n2 + 1));
  v_.resize((n1 + 1) * n2);
  w_.resize(n1 * n2);
  what_.resize(n1 * n2);
  Stream south(seed, {kSouth, replica});
  for (std::size_t i = 1; i <= n1; ++i) h_[i - 1] = -std::log(south.uniform()) / rho;
  Stream west(seed, {kWest, replica});
  for (std::size_t j = 1; j <= n2; ++j) v_[(j - 1) * (n1 + 1)] = -std::log(west.uniform()) / (1.0 - rho);
  Stream bulk(seed, {kBulk, replica});
  for (std::size_t j = 1; j <= n2; ++j) {
    for (std::size_t i = 1; i <= n1; ++i) {
      const double om = bulk.exponential(1.0);
      const double hs = h(i, j - 1);
      const double vw = v(i - 1, j);
      const std::size_t c = (j - 1) * n1 + (i - 1);
      w_[c] = om;
      what_[c] = std::min(hs, vw);
      h_[j * n1 + (i - 1)] = om + std::max(hs - vw, 0.0);
      v_[(j - 1) * (n1 + 1) + i] = om + std::max(vw - hs, 0.0);
    }
  }
}

double BusemannField::max_face_residual() const {
  double m = 0.0;
  for (std::size_t j = 1; j <= n2_; ++j)
    for (std::size_t i = 1; i <= n1_; ++i)
      m = std::max(m, std::abs(h(i, j - 1) + v(i, j) - v(i - 1, j) - h(i, j)));
  return m;
}

BusemannField busemann_stationary_grid(double rho, std::size_t n1, std::size_t n2,
                                       std::uint64_t seed, std::uint64_t replica) {
  return BusemannField(rho, n1, n2, seed, replica);
}

Vertex characteristic_vertex(double rho, double n) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("characteristic_vertex: rho outside (0, 1)");
  const double a = rho * rho, b = (1.0 - rho) * (1.0 - rho);
  return {static_cast<Index>(std::llround(n * a / (a + b))), static_cast<Index>(std::llround(n * b / (a + b)))};
}

double busemann_direction_limit(double rho, double n, Vertex x, Vertex y, std::uint64_t seed,
                                std::uint64_t replica, double max_cells) {
  const Vertex v = characteristic_vertex(rho, n);
  if (x.x > v.x || x.y > v.y || y.x > v.x || y.y > v.y)
    throw std::invalid_argument("busemann_direction_limit: x, y must lie south-west of v_n");
  if (x.x == y.x && x.y == y.y) return 0.0;
  const Index lx = std::min(x.x, y.x), ly = std::min(x.y, y.y);
  const auto w = static_cast<std::size_t>(v.x - lx + 1);
  const auto hgt = static_cast<std::size_t>(v.y - ly + 1);
  if (static_cast<double>(w) * static_cast<double>(hgt) > max_cells)
    throw std::length_error("busemann_direction_limit: grid exceeds memory budget");
  // G(z) = L(z, v), rows swept from the top down.
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> row(w, ninf);
  double gx = 0.0, gy = 0.0;
  for (Index j = v.y; j >= ly; --j) {
    Stream g(seed, {kDirection, replica, static_cast<std::uint64_t>(j - ly)});
    double right = ninf;
    for (std::size_t k = w; k-- > 0;) {
      double best = std::max(right, row[k]);
      if (j == v.y && k == w - 1) best = 0.0;
      row[k] = right = g.exponential(1.0) + best;
    }
    if (j == x.y) gx = row[static_cast<std::size_t>(x.x - lx)];
    if (j == y.y) gy = row[static_cast<std::size_t>(y.x - lx)];
  }
  return gx - gy;
}

}  // namespace shlab
