// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "shlab/continuous_q.hpp"
#include "shlab/core_seq.hpp"

namespace shlab {

// How sample_mu reaches the stationary multiline law on a finite window.
//   Stationary  every sorting queue seeded with an independent Exp(gap) sojourn
//   BurnIn      Empty queues started burn_in_factor * 16 / gap^2 steps early
enum class MuSeeding { Stationary, BurnIn };

struct SamplerConfig {
  std::uint64_t seed = 20260101;
  double N = 1e6;
  std::vector<double> mu_grid{0.0};
  double x0 = 1.0;
  double burn_in_factor = 1.0;
  std::size_t replicas = 1000;
  double grid_step = 1e-2;
  // Continuum domain is [-4 * gate, max(x0, gate)].
  double gate = 50.0;
  MuSeeding seeding = MuSeeding::Stationary;
  unsigned threads = 0;

  void validate() const;
};

struct IndexRange {
  Index base;
  std::size_t length;
};

std::size_t default_burn_in(double gap, double factor = 1.0);

LineEnsemble sample_nu(const DensityVector& rho, IndexRange range, std::uint64_t seed,
                       std::uint64_t replica);

// Optional sojourns receives J^2..J^n of the sorting construction.
LineEnsemble sample_mu(const DensityVector& rho, IndexRange range, std::uint64_t seed,
                       std::uint64_t replica, MuSeeding seeding = MuSeeding::Stationary,
                       double burn_in_factor = 1.0, std::vector<Window>* sojourns = nullptr);

double rho_of_mu(double mu, double N);

// Index half-width K = ceil(x0 N^{2/3}); windows cover [-K+1, K].
Index gn_half_width(double x0, double N);

struct GnSample {
  std::vector<double> mu;
  std::vector<double> rho;
  LineEnsemble increments;                 // I^rho on [-K+1, K]
  std::vector<PiecewiseLinearPath> paths;  // G^N_mu on [-K N^{-2/3}, K N^{-2/3}]
};

GnSample sample_GN(const SamplerConfig& cfg, std::uint64_t replica);

// Diffusive rescaling x -> N^{-1/3} m(I - 2)(x N^{2/3}).
PiecewiseLinearPath gn_path(const Window& increments, double N);

// Gaussian walk with step mean drift * h and variance 4h, 0 at the origin,
// on [-left, right] rounded outward to the grid.
PiecewiseLinearPath sample_two_sided_bm(double drift, double left, double right, double step,
                                        std::uint64_t seed, std::uint64_t replica,
                                        std::uint64_t line = 0);

struct ShSample {
  PathEnsemble ens;
  bool local = true;
};

// Q^k of independent drifted walks on [-4 gate, max(x0, gate)]. A gate <= 0
// disables the locality checks.
ShSample sample_sh_fdd(const std::vector<double>& drifts, double x0, double step, double gate,
                       std::uint64_t seed, std::uint64_t replica);

}  // namespace shlab
