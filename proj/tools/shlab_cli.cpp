// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

// Batch driver. Every run writes manifest.json, report.json and config.ini
// into --out-dir; config.ini replays the run via --config.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shlab/continuous_q.hpp"
#include "shlab/melon.hpp"
#include "shlab/sampler.hpp"
#include "shlab/stats.hpp"
#include "shlab/suites.hpp"

namespace fs = std::filesystem;
using namespace shlab;

namespace {

struct Params {
  std::string command;
  std::uint64_t seed = 20260101;
  std::size_t replicas = 0;  // 0: each suite's own default
  double n_scale = 1e6;
  bool n_given = false;
  std::string mu_grid = "0";
  double x0 = 1.0;
  double grid_step = 1e-2;
  double gate = 50.0;
  double alpha = 1e-3;
  std::string suite;
  std::string out_dir = "shlab_out";
  unsigned threads = 0;
  std::size_t lines = 4;
  std::size_t length = 200;
  bool continuum = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s)) out.push_back(std::stod(t));
  if (out.empty()) throw std::invalid_argument("empty --mu-grid");
  return out;
}

// Replayable echo of every knob except the output directory.
std::string config_text(const Params& p) {
  std::ostringstream o;
  o << "seed=" << p.seed << "\n"
    << "replicas=" << p.replicas << "\n"
    << "n-scale=" << format_double(p.n_scale) << "\n"
    << "mu-grid=\"" << p.mu_grid << "\"\n"
    << "x0=" << format_double(p.x0) << "\n"
    << "grid-step=" << format_double(p.grid_step) << "\n"
    << "gate=" << format_double(p.gate) << "\n"
    << "alpha=" << format_double(p.alpha) << "\n"
    << "suite=\"" << p.suite << "\"\n"
    << "lines=" << p.lines << "\n"
    << "length=" << p.length << "\n"
    << "continuum=" << (p.continuum ? "true" : "false") << "\n";
  if (p.n_given) o << "n-given=true\n";
  return o.str();
}

using SuiteFn = std::function<Checks(const RunOptions&, const Params&)>;

std::size_t reps(const Params& p, std::size_t dflt) { return p.replicas ? p.replicas : dflt; }

const std::vector<std::pair<std::string, SuiteFn>>& identity_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"dd-equals-ff", [](auto& o, auto& p) { return Checks{check_dd_equals_ff(o, 8, 10000, reps(p, 200))}; }},
      {"translation", [](auto& o, auto& p) { return Checks{check_translation(o, reps(p, 100))}; }},
      {"exchange", [](auto& o, auto& p) { return Checks{check_exchange(o, reps(p, 100))}; }},
      {"conservation", [](auto& o, auto& p) { return check_conservation(o, reps(p, 100)); }},
      {"lemma-se", [](auto& o, auto& p) { return Checks{check_lemma_se(o, reps(p, 100))}; }},
      {"lemma-bs", [](auto& o, auto& p) { return Checks{check_lemma_bs(o, reps(p, 100))}; }},
      {"lemma-qz", [](auto& o, auto& p) { return check_lemma_qz(o, reps(p, 100)); }},
      {"q-equivariance", [](auto& o, auto& p) { return check_q_equivariance(o, reps(p, 100)); }},
  };
  return s;
}

const std::vector<std::pair<std::string, SuiteFn>>& distribution_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"stationary-queue", [](auto& o, auto& p) { return check_stationary_queue(o, 0.6, 0.4, reps(p, 100000)); }},
      {"sojourns",
       [](auto& o, auto& p) { return check_sojourn_barriers(o, {0.60, 0.55, 0.50, 0.45}, reps(p, 100000)); }},
      {"burke", [](auto& o, auto& p) { return check_burke(o, {0.60, 0.55, 0.50, 0.45}, 0.7, reps(p, 100000)); }},
      {"sh-marginal",
       [](auto& o, auto& p) { return check_sh_marginal(o, {0.0, 1.0}, reps(p, 10000), p.grid_step); }},
      {"cross-sampler",
       [](auto& o, auto& p) { return check_cross_sampler(o, p.n_scale, reps(p, 10000), p.grid_step, p.gate); }},
      {"monotonicity",
       [](auto& o, auto& p) {
         return Checks{check_monotonicity(o, p.n_scale, {-1.0, 0.0, 1.0}, reps(p, 1000))};
       }},
      {"epochs",
       [](auto& o, auto& p) { return check_epochs(o, p.n_given ? p.n_scale : 1e5, p.x0, 1.0, reps(p, 1000)); }},
      {"scale-invariance",
       [](auto& o, auto& p) { return check_scale_invariance(o, 2.0, reps(p, 10000), p.grid_step, p.gate); }},
      {"lpp", [](auto& o, auto& p) { return check_lpp(o, reps(p, 1000), 2000, 4000); }},
      {"lemma-dis", [](auto& o, auto& p) { return Checks{check_lemma_dis(o, 50, reps(p, 1000))}; }},
      {"two-line-burke", [](auto& o, auto& p) { return check_two_line_burke(o, reps(p, 10000), 1e-3); }},
      {"stats", [](auto& o, auto& p) { return check_stats_selftest(o, reps(p, 1000), 500); }},
  };
  return s;
}

std::string results_csv(const std::vector<std::pair<std::string, Checks>>& runs) {
  std::string out = "suite,test,statistic,critical,pass\n";
  for (const auto& [suite, checks] : runs)
    for (const auto& c : checks)
      out += suite + ",\"" + c.name + "\"," + format_double(c.statistic) + "," + format_double(c.critical) + "," +
             (c.pass ? "1" : "0") + "\n";
  return out;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> files;
  nlohmann::json report = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
};

Outcome run_suites(const Params& p, const std::vector<std::pair<std::string, SuiteFn>>& table,
                   const std::string& hash) {
  RunOptions o{p.seed, p.alpha, p.threads};
  const auto wanted = split(p.suite);
  for (const auto& w : wanted) {
    bool known = false;
    for (const auto& [name, fn] : table) known |= name == w;
    if (!known) throw std::invalid_argument("unknown suite: " + w);
  }
  Outcome out;
  std::vector<std::pair<std::string, Checks>> runs;
  for (const auto& [name, fn] : table) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    auto checks = fn(o, p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "[%s] %s in %.1fs\n", all_pass(checks) ? "PASS" : "FAIL", name.c_str(), secs);
    for (const auto& c : checks) {
      out.report.push_back({{"test", name + ": " + c.name},
                            {"statistic", c.statistic},
                            {"critical", c.critical},
                            {"pass", c.pass},
                            {"config_hash", hash},
                            {"detail", c.detail}});
      out.pass &= c.pass;
    }
    out.summary[name] = all_pass(checks) ? "pass" : "fail";
    runs.emplace_back(name, std::move(checks));
  }
  write_file(fs::path(p.out_dir) / "results.csv", results_csv(runs));
  out.files.push_back("results.csv");
  return out;
}

Outcome run_sticky(const Params& p) {
  const auto grid = parse_grid(p.mu_grid);
  const std::size_t n = reps(p, 1);
  Outcome out;
  std::string lines = "replica,mu,x,value\n", epochs = "replica,mu\n";
  std::vector<std::size_t> counts;
  std::size_t excluded = 0;
  for (std::size_t r = 0; r < n; ++r) {
    PathFamily fam;
    if (p.continuum) {
      const auto s = sample_sh_fdd(grid, p.x0, p.grid_step, p.gate, p.seed, r);
      excluded += !s.local;
      for (std::size_t i = 0; i < grid.size(); ++i) fam.emplace_back(grid[i], s.ens[i]);
    } else {
      SamplerConfig cfg;
      cfg.seed = p.seed;
      cfg.N = p.n_scale;
      cfg.mu_grid = grid;
      cfg.x0 = p.x0;
      const auto s = sample_GN(cfg, r);
      for (std::size_t i = 0; i < grid.size(); ++i) fam.emplace_back(grid[i], s.paths[i]);
    }
    const std::string rs = std::to_string(r);
    for (const auto& [mu, path] : fam)
      for (std::size_t j = 0; j < path.knots.size(); ++j) {
        const double x = path.x(j);
        if (std::abs(x) > p.x0 + 1e-9 * path.spacing) continue;
        lines += rs + "," + format_double(mu) + "," + format_double(x) + "," + format_double(path.knots[j]) + "\n";
      }
    const auto ep = detect_epochs(fam, p.x0);
    counts.push_back(ep.size());
    for (double mu : ep) epochs += rs + "," + format_double(mu) + "\n";
  }
  write_file(fs::path(p.out_dir) / "sticky.csv", lines);
  write_file(fs::path(p.out_dir) / "epochs.csv", epochs);
  out.files = {"sticky.csv", "epochs.csv"};
  std::size_t total = 0;
  for (auto c : counts) total += c;
  out.summary = {{"replicas", n},
                 {"mean_epoch_count", static_cast<double>(total) / static_cast<double>(n)},
                 {"gate_exclusions", excluded}};
  return out;
}

Outcome run_melon_figure(const Params& p) {
  if (p.lines < 1) throw std::invalid_argument("--lines must be positive");
  std::vector<double> r;
  for (std::size_t i = 0; i < p.lines; ++i) r.push_back(0.6 - 0.05 * static_cast<double>(i));
  const DensityVector rho(r);
  const std::size_t n = reps(p, 1);
  std::string stat = "replica,line,index,value\n", packed = "replica,line,x,value\n", raw = packed;
  for (std::size_t rep = 0; rep < n; ++rep) {
    // Stationary melon: partial sums of a mu sample from index 1.
    const auto ens = sample_mu(rho, {1, p.length}, p.seed, rep);
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const auto path = interpolate(ens[i]);
      for (std::size_t j = 0; j < path.knots.size(); ++j)
        stat += std::to_string(rep) + "," + std::to_string(i + 1) + "," + std::to_string(j) + "," +
                format_double(path.knots[j]) + "\n";
    }
    // Packed melon of independent walks on [0, length * grid_step].
    std::vector<PiecewiseLinearPath> walks;
    for (std::size_t i = 0; i < p.lines; ++i)
      walks.push_back(sample_two_sided_bm(0.0, 0.0, static_cast<double>(p.length) * p.grid_step, p.grid_step,
                                          p.seed, rep, i));
    const auto pm = packed_melon(PathEnsemble(walks));
    for (std::size_t i = 0; i < p.lines; ++i)
      for (std::size_t j = 0; j < pm[i].knots.size(); ++j) {
        const std::string head = std::to_string(rep) + "," + std::to_string(i + 1) + "," + format_double(pm[i].x(j));
        packed += head + "," + format_double(pm[i].knots[j]) + "\n";
        raw += head + "," + format_double(walks[i].knots[j]) + "\n";
      }
  }
  write_file(fs::path(p.out_dir) / "stationary_melon.csv", stat);
  write_file(fs::path(p.out_dir) / "packed_melon.csv", packed);
  write_file(fs::path(p.out_dir) / "packed_input.csv", raw);
  Outcome out;
  out.files = {"stationary_melon.csv", "packed_melon.csv", "packed_input.csv"};
  out.summary = {{"replicas", n}, {"lines", p.lines}};
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary horizon simulation and verification lab"};
  Params p;
  app.add_option("command", p.command, "identities | distributions | sticky | melon-figure")
      ->required()
      ->check(CLI::IsMember({"identities", "distributions", "sticky", "melon-figure"}));
  app.add_option("--seed", p.seed, "root seed");
  app.add_option("--replicas", p.replicas, "replica count (0 keeps each suite's default)");
  auto* nopt = app.add_option("--n-scale", p.n_scale, "scaling parameter N");
  app.add_option("--mu-grid", p.mu_grid, "comma-separated increasing drifts");
  app.add_option("--x0", p.x0, "half-width of the spatial window");
  app.add_option("--grid-step", p.grid_step, "Brownian grid step");
  app.add_option("--gate", p.gate, "locality horizon for continuum samples (<= 0 disables)");
  app.add_option("--alpha", p.alpha, "test level");
  app.add_option("--suite", p.suite, "comma-separated suite names (default: all)");
  app.add_option("--out-dir", p.out_dir, "output directory");
  app.add_option("--threads", p.threads, "worker threads (0: all cores)");
  app.add_option("--lines", p.lines, "melon-figure line count");
  app.add_option("--length", p.length, "melon-figure window length");
  app.add_flag("--continuum", p.continuum, "sticky: sample the continuum instead of G^N");
  app.add_flag("--n-given", p.n_given, "internal: --n-scale was set explicitly")->group("");
  app.set_config("--config", "", "key=value file, e.g. a previous run's config.ini");
  CLI11_PARSE(app, argc, argv);
  if (nopt->count() > 0) p.n_given = true;

  try {
    fs::create_directories(p.out_dir);
    const std::string cfg = config_text(p);
    const std::string hash = config_hash(p.command + "\n" + cfg);
    Outcome out;
    if (p.command == "identities") {
      out = run_suites(p, identity_suites(), hash);
    } else if (p.command == "distributions") {
      out = run_suites(p, distribution_suites(), hash);
    } else if (p.command == "sticky") {
      out = run_sticky(p);
    } else {
      out = run_melon_figure(p);
    }
    write_file(fs::path(p.out_dir) / "config.ini", cfg);
    write_file(fs::path(p.out_dir) / "report.json", out.report.dump(2) + "\n");
    nlohmann::json m{{"command", p.command},
                     {"config", cfg},
                     {"config_file", "config.ini"},
                     {"config_hash", hash},
                     {"seed", p.seed},
                     {"timestamp", utc_now()},
                     {"outputs", out.files},
                     {"summary", out.summary},
                     {"pass", out.pass}};
    write_file(fs::path(p.out_dir) / "manifest.json", m.dump(2) + "\n");
    for (const auto& r : out.report)
      if (!r["pass"].get<bool>()) std::fprintf(stderr, "FAIL %s\n", r["test"].get<std::string>().c_str());
    return out.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
