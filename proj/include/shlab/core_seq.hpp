// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shlab {

using Index = std::int64_t;

// Finite slice of a bi-infinite sequence; values[j] sits at index base + j.
struct Window {
  Index base = 0;
  std::vector<double> values;

  Window() = default;
  Window(Index b, std::vector<double> v);

  static Window constant(Index base, std::size_t length, double c);

  std::size_t size() const { return values.size(); }
  Index first() const { return base; }
  Index last() const { return base + static_cast<Index>(values.size()) - 1; }
  bool contains(Index i) const { return i >= first() && i <= last(); }

  double at(Index i) const;
  double& at(Index i);

  // Sub-window [lo, hi], both inclusive.
  Window slice(Index lo, Index hi) const;
  Window shifted(double c) const;  // every value + c

  bool same_range(const Window& o) const {
    return base == o.base && values.size() == o.values.size();
  }
};

Window operator+(const Window& a, const Window& b);
Window operator-(const Window& a, const Window& b);

// S^{k,l}(w) = sum_{i=k}^{l} w(i).
double partial_sum(const Window& w, Index k, Index l);

// Values at left_end + j * spacing, linear in between.
struct PiecewiseLinearPath {
  double left_end = 0.0;
  double spacing = 1.0;
  std::vector<double> knots;

  PiecewiseLinearPath() = default;
  PiecewiseLinearPath(double left, double h, std::vector<double> k);

  double right_end() const {
    return left_end + spacing * static_cast<double>(knots.size() - 1);
  }
  double x(std::size_t j) const { return left_end + spacing * static_cast<double>(j); }
  bool covers(double a, double b) const;
  bool same_grid(const PiecewiseLinearPath& o) const;

  double operator()(double t) const;
};

// Strictly decreasing positive densities rho_1 > ... > rho_n.
class DensityVector {
 public:
  explicit DensityVector(std::vector<double> rho);
  const std::vector<double>& rho() const { return rho_; }
  std::size_t size() const { return rho_.size(); }
  double operator[](std::size_t i) const { return rho_[i]; }
  double min_gap() const;  // min rho_{i-1} - rho_i, +inf for one line

 private:
  std::vector<double> rho_;
};

// Lines ordered bottom to top, all on one index range.
struct LineEnsemble {
  std::vector<Window> lines;
  bool ordered = false;

  LineEnsemble() = default;
  explicit LineEnsemble(std::vector<Window> l, bool ord = false);
  std::size_t size() const { return lines.size(); }
  const Window& operator[](std::size_t i) const { return lines[i]; }
  Window& operator[](std::size_t i) { return lines[i]; }
};

struct PathEnsemble {
  std::vector<PiecewiseLinearPath> lines;
  bool ordered = false;

  PathEnsemble() = default;
  explicit PathEnsemble(std::vector<PiecewiseLinearPath> l, bool ord = false);
  std::size_t size() const { return lines.size(); }
  const PiecewiseLinearPath& operator[](std::size_t i) const { return lines[i]; }
};

// The map m: anchored partial sums, linear between integers.
PiecewiseLinearPath interpolate(const Window& w);

double metric_dn(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, double n);
double metric_d(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, int n_max);

// t -> f(tau t).
PiecewiseLinearPath scale_path(const PiecewiseLinearPath& f, double tau);

// Pointwise f - g on a shared grid.
PiecewiseLinearPath path_difference(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g);

// Serialization. CSV columns: index_or_x,value.
std::string to_csv(const Window& w);
std::string to_csv(const PiecewiseLinearPath& p);
std::string to_json(const Window& w);
std::string to_json(const PiecewiseLinearPath& p);
Window window_from_json(const std::string& s);
PiecewiseLinearPath path_from_json(const std::string& s);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace shlab
