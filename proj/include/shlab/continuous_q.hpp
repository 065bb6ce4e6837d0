// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "shlab/core_seq.hpp"

namespace shlab {

struct MaxGap {
  double value;     // W_t(f) = sup_{left_end<=s<=t} f(t) - f(s)
  double location;  // leftmost s attaining it
};

MaxGap running_max_gap(const PiecewiseLinearPath& f, double t);

// Continuous queue on a shared grid containing 0. The domain's left end
// stands in for -infinity.
PiecewiseLinearPath q_map(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g);

// [f1, Q(f1, Q^{k-1}(f2..fk)_1), ..., Q(f1, Q^{k-1}(f2..fk)_{k-1})].
PathEnsemble q_k(const PathEnsemble& ens);

struct LocalityReport {
  double n;
  double argmax_location;  // P_{-n}(f - g)
  bool inside;             // in [-2n, -n]
};

LocalityReport locality_check(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, double n);

// q_k with a locality check on every Q application.
struct GatedEnsemble {
  PathEnsemble ens;
  bool local = true;
  double worst_location = 0.0;  // argmax location of the first failing check
};

GatedEnsemble q_k_gated(const PathEnsemble& ens, double n);

struct DiscreteGap {
  double gap;    // d_n(m(D(I1, I2)), Q(m I1, m I2))
  double bound;  // 16 sup (|I1| + |I2|) over [-2n-2, 2n]
  bool local;
  bool holds() const { return gap <= bound; }
};

DiscreteGap discrete_continuous_gap(const Window& i1, const Window& i2, Index n);

using PathFamily = std::vector<std::pair<double, PiecewiseLinearPath>>;
using WindowFamily = std::vector<std::pair<double, Window>>;

// Grid points whose restriction to [-x0, x0] differs from the predecessor's
// by more than tol in sup norm. A negative tol means 1e-9 times the family's
// largest absolute value on the window.
std::vector<double> detect_epochs(const PathFamily& family, double x0, double tol = -1.0);
std::vector<double> detect_epochs(const WindowFamily& family, Index lo, Index hi, double tol = -1.0);

}  // namespace shlab
