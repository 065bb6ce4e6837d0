// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

#include "shlab/core_seq.hpp"

namespace shlab {

// How the queue state left of the window base is fixed. Every kind reduces to
// the sojourn J_{m-1} of the customer before the base:
//   Empty      J_{m-1} = 0 (inputs zero-padded to the left)
//   Primed(J)  J_{m-1} = J
//   BurnIn(B)  Empty at the input base, first B outputs discarded
struct BoundaryMode {
  enum class Kind { Empty, Primed, BurnIn };
  Kind kind = Kind::Empty;
  double j_prev = 0.0;
  std::size_t burn_in = 0;

  static BoundaryMode empty() { return {}; }
  static BoundaryMode primed(double j);
  static BoundaryMode burn(std::size_t b);

  double seed() const { return kind == Kind::Primed ? j_prev : 0.0; }
  std::size_t trim() const { return kind == Kind::BurnIn ? burn_in : 0; }
};

struct QueueOutput {
  Window waiting;  // w
  Window depart;   // d
  Window sojourn;  // t = J
  Window kept;     // r
  Window idle;     // e
};

// All five maps in one pass; s is service, a is inter-arrival.
QueueOutput run_queue(const Window& s, const Window& a, BoundaryMode mode);

Window waiting_times(const Window& s, const Window& a, BoundaryMode mode);
Window depart(const Window& s, const Window& a, BoundaryMode mode);
Window sojourn(const Window& s, const Window& a, BoundaryMode mode);
Window arrivals_kept(const Window& s, const Window& a, BoundaryMode mode);
Window idle_times(const Window& s, const Window& a, BoundaryMode mode);

// Cumulative idle from the base: psi_i = (inf_{m<=j<=i} J + S^{m,j-1}(s-a) - a_j)^-.
Window psi_m(double j_prev, const Window& s, const Window& a);

// (sup_i S^{m,i}(w))^+ and max |w_i| over the whole window.
double phi_mn(const Window& w);
double mx_mn(const Window& w);

namespace kernel {

inline double neg_part(double x) {
#ifdef SHLAB_CORRUPT_CLAMP
  return x > 0.0 ? x : 0.0;
#else
  return x < 0.0 ? -x : 0.0;
#endif
}

// Lindley pass over raw arrays. Any output pointer may be null. Returns the
// sojourn of the last customer.
double queue(std::span<const double> s, std::span<const double> a, double j_prev,
             double* d, double* r, double* t);

}  // namespace kernel

}  // namespace shlab
