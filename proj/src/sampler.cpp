// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include "shlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shlab/melon.hpp"
#include "shlab/rng.hpp"

namespace shlab {

namespace {
// Stream purposes.
constexpr std::uint64_t kNu = 1, kQueueSeed = 2, kBrownian = 3;
}  // namespace

void SamplerConfig::validate() const {
  if (!(N > 0.0)) throw std::invalid_argument("config: N must be positive");
  if (mu_grid.empty()) throw std::invalid_argument("config: empty mu grid");
  for (std::size_t j = 1; j < mu_grid.size(); ++j)
    if (!(mu_grid[j] > mu_grid[j - 1])) throw std::invalid_argument("config: mu grid not increasing");
  for (double mu : mu_grid) {
    const double r = rho_of_mu(mu, N);
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("config: rho(mu) outside (0, 1)");
  }
  if (!(x0 > 0.0)) throw std::invalid_argument("config: x0 must be positive");
  if (!(burn_in_factor > 0.0)) throw std::invalid_argument("config: burn_in_factor must be positive");
  if (replicas == 0) throw std::invalid_argument("config: replicas must be positive");
  if (!(grid_step > 0.0)) throw std::invalid_argument("config: grid_step must be positive");
}

std::size_t default_burn_in(double gap, double factor) {
  if (!(gap > 0.0)) throw std::invalid_argument("burn-in: density gap must be positive");
  return static_cast<std::size_t>(std::ceil(factor * 16.0 / (gap * gap)));
}

LineEnsemble sample_nu(const DensityVector& rho, IndexRange range, std::uint64_t seed,
                       std::uint64_t replica) {
  if (range.length == 0) throw std::invalid_argument("sample_nu: empty window");
  std::vector<Window> lines;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Stream g(seed, {kNu, replica, i});
    std::vector<double> v(range.length);
    for (auto& x : v) x = g.exponential(rho[i]);
    lines.emplace_back(range.base, std::move(v));
  }
  return LineEnsemble(std::move(lines));
}

LineEnsemble sample_mu(const DensityVector& rho, IndexRange range, std::uint64_t seed,
                       std::uint64_t replica, MuSeeding seeding, double burn_in_factor,
                       std::vector<Window>* sojourns) {
  if (seeding == MuSeeding::Stationary) {
    Stream g(seed, {kQueueSeed, replica});
    auto lines = sample_nu(rho, range, seed, replica);
    return sort_insert(lines, rho, [&g](double gap) { return g.exponential(gap); }, sojourns);
  }
  if (rho.size() == 1) return sample_nu(rho, range, seed, replica);
  const std::size_t b = default_burn_in(rho.min_gap(), burn_in_factor);
  auto lines = sample_nu(rho, {range.base - static_cast<Index>(b), range.length + b}, seed, replica);
  return sort_insert(lines, rho, BoundaryMode::burn(b), sojourns);
}

double rho_of_mu(double mu, double N) { return 0.5 - 0.25 * mu * std::cbrt(1.0 / N); }

Index gn_half_width(double x0, double N) {
  return static_cast<Index>(std::ceil(x0 * std::pow(N, 2.0 / 3.0) - 1e-9));
}

PiecewiseLinearPath gn_path(const Window& increments, double N) {
  const auto m = interpolate(increments.shifted(-2.0));
  const double sx = std::pow(N, -2.0 / 3.0);
  const double sv = std::cbrt(1.0 / N);
  std::vector<double> k(m.knots.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = sv * m.knots[j];
  return PiecewiseLinearPath(m.left_end * sx, sx, std::move(k));
}

GnSample sample_GN(const SamplerConfig& cfg, std::uint64_t replica) {
  cfg.validate();
  GnSample out;
  out.mu = cfg.mu_grid;
  for (double mu : cfg.mu_grid) out.rho.push_back(rho_of_mu(mu, cfg.N));
  const Index k = gn_half_width(cfg.x0, cfg.N);
  const DensityVector rho(out.rho);
  out.increments = sample_mu(rho, {-k + 1, static_cast<std::size_t>(2 * k)}, cfg.seed, replica,
                             cfg.seeding, cfg.burn_in_factor);
  for (const auto& w : out.increments.lines) out.paths.push_back(gn_path(w, cfg.N));
  return out;
}

PiecewiseLinearPath sample_two_sided_bm(double drift, double left, double right, double step,
                                        std::uint64_t seed, std::uint64_t replica,
                                        std::uint64_t line) {
  if (!(step > 0.0)) throw std::invalid_argument("sample_two_sided_bm: grid_step must be positive");
  if (left < 0.0 || right < 0.0) throw std::invalid_argument("sample_two_sided_bm: domain must contain 0");
  const auto nl = static_cast<std::size_t>(std::ceil(left / step - 1e-9));
  const auto nr = static_cast<std::size_t>(std::ceil(right / step - 1e-9));
  const double mean = drift * step;
  const double sd = 2.0 * std::sqrt(step);
  std::vector<double> k(nl + nr + 1, 0.0);
  Stream gr(seed, {kBrownian, replica, line, 1});
  for (std::size_t j = nl + 1; j < k.size(); ++j) k[j] = k[j - 1] + mean + sd * gr.normal();
  Stream gl(seed, {kBrownian, replica, line, 0});
  for (std::size_t j = nl; j-- > 0;) k[j] = k[j + 1] - (mean + sd * gl.normal());
  return PiecewiseLinearPath(-static_cast<double>(nl) * step, step, std::move(k));
}

ShSample sample_sh_fdd(const std::vector<double>& drifts, double x0, double step, double gate,
                       std::uint64_t seed, std::uint64_t replica) {
  if (drifts.empty()) throw std::invalid_argument("sample_sh_fdd: no drifts");
  for (std::size_t j = 1; j < drifts.size(); ++j)
    if (!(drifts[j] > drifts[j - 1])) throw std::invalid_argument("sample_sh_fdd: drifts not increasing");
  const double left = gate > 0.0 ? 4.0 * gate : x0;
  const double right = std::max(x0, gate);
  std::vector<PiecewiseLinearPath> w;
  for (std::size_t i = 0; i < drifts.size(); ++i)
    w.push_back(sample_two_sided_bm(drifts[i], left, right, step, seed, replica, i));
  PathEnsemble ens(std::move(w));
  if (gate <= 0.0) return {q_k(ens), true};
  auto g = q_k_gated(ens, gate);
  return {std::move(g.ens), g.local};
}

}  // namespace shlab
