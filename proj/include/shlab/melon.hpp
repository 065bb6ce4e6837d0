// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "shlab/core_seq.hpp"
#include "shlab/queueing.hpp"

namespace shlab {

// D(I1, D(I2, ... D(I_{k-1}, I_k))). Every queue uses the mode's seed; BurnIn
// trims once at the end.
Window d_tandem(const LineEnsemble& lines, BoundaryMode mode);

// Line i of the output is d_tandem of input lines 1..i.
LineEnsemble md_map(const LineEnsemble& ens, BoundaryMode mode);

struct Sorted {
  LineEnsemble ens;
  std::vector<double> density;
};

// sigma_i with i 1-based as in the pair (I_i, I_{i+1}); acts iff
// density[i-1] > density[i]. BurnIn is rejected here: apply it to the whole
// construction instead.
Sorted sigma_i(const LineEnsemble& ens, std::size_t i, const std::vector<double>& density,
               BoundaryMode mode);

// 1 / sample mean per line.
std::vector<double> empirical_densities(const LineEnsemble& ens);

struct MelonTrace {
  LineEnsemble lines;     // f^1..f^n
  std::vector<Window> u;  // u^2..u^n
  std::vector<Window> v;  // v^2..v^n
  std::vector<Window> J;  // J^2..J^n
  Index valid_from = 0;   // first index past burn-in

  double j_at(std::size_t i, Index x) const;  // i in 2..n
};

MelonTrace melonize(const LineEnsemble& inputs, const DensityVector& rho, BoundaryMode mode);

// (J^2_x, ..., J^n_x); default position is the right end minus 1.
std::vector<double> extract_sojourns(const MelonTrace& trace, Index x);
std::vector<double> extract_sojourns(const MelonTrace& trace);

// Seed of the queue that sorts a new line of density rho_new past a line of
// density rho_line (gap = rho_line - rho_new > 0).
using SeedFn = std::function<double(double gap)>;

// Bottom-up sorting: insert line i and bubble it up with sigma_{i-1} ... sigma_1.
// Returns the top lines after each insertion. If sojourns is given it receives
// the sojourn of the final sigma_1 queue of every insertion (J^2..J^n).
LineEnsemble sort_insert(const LineEnsemble& inputs, const DensityVector& rho, const SeedFn& seed,
                         std::vector<Window>* sojourns = nullptr);
LineEnsemble sort_insert(const LineEnsemble& inputs, const DensityVector& rho, BoundaryMode mode,
                         std::vector<Window>* sojourns = nullptr);

// Continuous sorting of paths on [0, T] vanishing at 0; output top to bottom.
PathEnsemble packed_melon(const PathEnsemble& paths);

// (alpha^U, alpha^D) of a path pair on a shared grid starting at 0.
std::pair<PiecewiseLinearPath, PiecewiseLinearPath> alpha_pair(const PiecewiseLinearPath& f,
                                                               const PiecewiseLinearPath& g);

}  // namespace shlab
