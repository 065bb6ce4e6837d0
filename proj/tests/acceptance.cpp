// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: one PASS/FAIL line per criterion, sub-check lines
// indented below it. `acceptance --criterion k` runs one criterion and exits
// nonzero iff it fails; without arguments all thirteen run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shlab/suites.hpp"

namespace fs = std::filesystem;
using namespace shlab;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SHLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// Runs a command, replays it from its config.ini (and once more single
// threaded), and compares every CSV byte for byte.
CheckResult rerun_identical(const std::string& label, const std::string& command, const std::string& args) {
  const fs::path root = fs::temp_directory_path() / "shlab_acceptance_rerun";
  const fs::path a = root / (label + "_a"), b = root / (label + "_b"), c = root / (label + "_c");
  for (const auto& d : {a, b, c}) fs::remove_all(d);
  const int ra = cli(command + " " + args + " --out-dir " + a.string());
  const int rb = cli(command + " --config " + (a / "config.ini").string() + " --out-dir " + b.string());
  const int rc = cli(command + " --config " + (a / "config.ini").string() + " --threads 1 --out-dir " + c.string());
  std::size_t files = 0, same = 0;
  if (fs::exists(a))
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      const auto name = e.path().filename();
      const auto ta = slurp(e.path());
      same += fs::exists(b / name) && fs::exists(c / name) && ta == slurp(b / name) && ta == slurp(c / name);
    }
  // Exit codes 0 and 1 both mean the run completed.
  const bool ran = ra >= 0 && ra <= 1 && rb == ra && rc == ra;
  const bool ok = ran && files > 0 && same == files;
  return {label + " rerun byte-identical", static_cast<double>(same), static_cast<double>(files), ok,
          std::to_string(same) + " of " + std::to_string(files) + " CSV files identical, exit codes " +
              std::to_string(ra) + "/" + std::to_string(rb) + "/" + std::to_string(rc)};
}

Checks reproducibility() {
  return {rerun_identical("sticky-prelimit", "sticky", "--seed 11 --n-scale 10000 --mu-grid=-1,-0.5,0,0.5,1 --replicas 3"),
          rerun_identical("sticky-continuum", "sticky",
                          "--seed 12 --continuum --mu-grid=0,1 --gate 5 --grid-step 0.05 --replicas 2"),
          rerun_identical("melon-figure", "melon-figure", "--seed 13 --lines 4 --length 100 --replicas 2"),
          rerun_identical("identities", "identities", "--seed 14 --suite translation,lemma-bs --replicas 20"),
          rerun_identical("distributions", "distributions", "--seed 15 --suite stats,lemma-dis --replicas 100")};
}

struct Criterion {
  std::string title;
  std::function<Checks(const RunOptions&)> run;
};

std::vector<Criterion> criteria() {
  return {
      {"melonization equals md_map (n = 2..8, window 1e4, 200 replicas)",
       [](auto& o) { return Checks{check_dd_equals_ff(o)}; }},
      {"deterministic identity suite", [](auto& o) {
         Checks c{check_translation(o), check_exchange(o)};
         append(c, check_conservation(o));
         c.push_back(check_lemma_se(o));
         c.push_back(check_lemma_bs(o));
         append(c, check_lemma_qz(o));
         append(c, check_q_equivariance(o));
         return c;
       }},
      {"stationary queue marginals (0.6, 0.4), N = 1e5", [](auto& o) { return check_stationary_queue(o); }},
      {"sojourn barriers (0.60, 0.55, 0.50, 0.45), N = 1e5", [](auto& o) { return check_sojourn_barriers(o); }},
      {"Burke stationarity with rho0 = 0.7, N = 1e5", [](auto& o) { return check_burke(o); }},
      {"SH one-drift marginals, N = 1e4", [](auto& o) { return check_sh_marginal(o); }},
      {"prelimit N = 1e6 vs continuum at drifts (0, 1)", [](auto& o) { return check_cross_sampler(o); }},
      {"increment monotonicity over {-1, 0, 1}, 1e3 replicas", [](auto& o) { return Checks{check_monotonicity(o)}; }},
      {"epoch counts on [-1, 1] x [-1, 1]", [](auto& o) { return check_epochs(o); }},
      {"scale invariance c = 2, N = 1e4", [](auto& o) { return check_scale_invariance(o); }},
      {"LPP oracle cross-check", [](auto& o) { return check_lpp(o); }},
      {"discrete-continuous gap bound, n = 50", [](auto& o) { return Checks{check_lemma_dis(o)}; }},
      {"byte-identical reruns", [](auto&) { return reproducibility(); }},
  };
}

bool run_one(std::size_t k, const Criterion& c, const RunOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Checks checks;
  bool pass = false;
  std::string err;
  try {
    checks = c.run(o);
    pass = all_pass(checks);
  } catch (const std::exception& e) {
    err = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2zu: %s  %s  [%.1fs]\n", k, pass ? "PASS" : "FAIL", c.title.c_str(), secs);
  for (const auto& r : checks)
    std::printf("    %s %-55s stat=%-12.6g crit=%-12.6g %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.statistic,
                r.critical, r.detail.c_str());
  if (!err.empty()) std::printf("    error: %s\n", err.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::size_t which = 0;
  RunOptions o;
  app.add_option("--criterion", which, "1..13; 0 runs all")->check(CLI::Range(0, 13));
  app.add_option("--seed", o.seed, "root seed");
  app.add_option("--threads", o.threads, "worker threads");
  CLI11_PARSE(app, argc, argv);

  const auto all = criteria();
  bool ok = true;
  for (std::size_t k = 1; k <= all.size(); ++k)
    if (which == 0 || which == k) ok &= run_one(k, all[k - 1], o);
  return ok ? 0 : 1;
}
