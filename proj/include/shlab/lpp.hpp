// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "shlab/core_seq.hpp"

namespace shlab {

struct Vertex {
  Index x = 0;
  Index y = 0;
};

// Vertices [0, n1) x [0, n2), weights row-major by y.
struct LatticeGrid {
  std::size_t n1 = 0, n2 = 0;
  std::vector<double> weights;

  LatticeGrid(std::size_t n1, std::size_t n2, std::vector<double> w);
  static LatticeGrid exponential(std::size_t n1, std::size_t n2, std::uint64_t seed,
                                 std::uint64_t replica);
  double at(Index x, Index y) const;
};

// Max weight of an up-right path from `from` to `to`, both endpoints counted.
double last_passage(const LatticeGrid& grid, Vertex from, Vertex to);

// Stationary increments on the vertices [0, n1] x [0, n2]. South boundary
// edges are Exp(rho), west boundary edges Exp(1 - rho), bulk weights Exp(1).
// Boundary and bulk draws depend only on (seed, replica), so fields at
// different rho share uniforms.
class BusemannField {
 public:
  BusemannField(double rho, std::size_t n1, std::size_t n2, std::uint64_t seed, std::uint64_t replica);

  double rho() const { return rho_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

  // Edge (i-1, j) -> (i, j), 1 <= i <= n1, 0 <= j <= n2.
  double h(std::size_t i, std::size_t j) const { return h_[j * n1_ + (i - 1)]; }
  // Edge (i, j-1) -> (i, j), 0 <= i <= n1, 1 <= j <= n2.
  double v(std::size_t i, std::size_t j) const { return v_[(j - 1) * (n1_ + 1) + i]; }
  // Weight at the north-east corner (i, j) of a cell, i, j >= 1.
  double omega(std::size_t i, std::size_t j) const { return w_[(j - 1) * n1_ + (i - 1)]; }
  // Min of the south and west edges of the cell with north-east corner (i, j).
  double omega_hat(std::size_t i, std::size_t j) const { return what_[(j - 1) * n1_ + (i - 1)]; }

  // Largest |south + east - west - north| over all unit faces.
  double max_face_residual() const;

 private:
  double rho_;
  std::size_t n1_, n2_;
  std::vector<double> h_, v_, w_, what_;
};

BusemannField busemann_stationary_grid(double rho, std::size_t n1, std::size_t n2,
                                       std::uint64_t seed, std::uint64_t replica);

// Characteristic endpoint round(n (rho^2, (1-rho)^2) / (rho^2 + (1-rho)^2)).
Vertex characteristic_vertex(double rho, double n);

// L(x, v_n) - L(y, v_n) on a fresh Exp(1) grid; a biased finite-n estimate of
// the Busemann increment. Throws if the grid exceeds max_cells.
double busemann_direction_limit(double rho, double n, Vertex x, Vertex y, std::uint64_t seed,
                                std::uint64_t replica, double max_cells = 5e7);

}  // namespace shlab
