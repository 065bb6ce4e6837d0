// Copyright 2026 The stationary-horizon authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SHLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("shlab_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("identities subcommand") {
  const auto d = scratch("id");
  CHECK(run("identities --suite translation,exchange --replicas 10 --out-dir " + d.string()) == 0);
  const auto report = nlohmann::json::parse(slurp(d / "report.json"));
  REQUIRE(report.size() == 2);
  for (const auto& r : report) {
    CHECK(r.contains("test"));
    CHECK(r.contains("statistic"));
    CHECK(r.contains("critical"));
    CHECK(r.contains("config_hash"));
    CHECK(r["pass"].get<bool>());
  }
  const auto m = nlohmann::json::parse(slurp(d / "manifest.json"));
  CHECK(m["command"] == "identities");
  CHECK(m["pass"].get<bool>());
  CHECK(fs::exists(d / "results.csv"));
  CHECK(run("identities --suite nonsense --out-dir " + d.string()) == 2);
  CHECK(run("bogus") != 0);
}

TEST_CASE("failing suite gives a nonzero exit") {
  // At N = 1 the prelimit one-point law is a shifted exponential, far from
  // the Gaussian continuum.
  const auto d = scratch("fail");
  CHECK(run("distributions --suite cross-sampler --n-scale 1 --replicas 2000 --gate 5 --grid-step 0.05 --out-dir " +
            d.string()) == 1);
  const auto m = nlohmann::json::parse(slurp(d / "manifest.json"));
  CHECK_FALSE(m["pass"].get<bool>());
}

TEST_CASE("sticky reruns are byte-identical") {
  const auto a = scratch("sticky_a"), b = scratch("sticky_b");
  CHECK(run("sticky --seed 5 --n-scale 1000 --mu-grid=-1,0,1 --replicas 3 --out-dir " + a.string()) == 0);
  CHECK(run("sticky --config " + (a / "config.ini").string() + " --out-dir " + b.string()) == 0);
  CHECK(slurp(a / "sticky.csv") == slurp(b / "sticky.csv"));
  CHECK(slurp(a / "epochs.csv") == slurp(b / "epochs.csv"));
  CHECK(slurp(a / "sticky.csv").rfind("replica,mu,x,value\n", 0) == 0);
  const auto c = scratch("sticky_c");
  CHECK(run("sticky --seed 5 --n-scale 1000 --mu-grid=0 --out-dir " + c.string()) == 0);
  CHECK(slurp(c / "epochs.csv") == "replica,mu\n");
}

TEST_CASE("melon figure") {
  const auto d = scratch("melon");
  CHECK(run("melon-figure --lines 3 --length 50 --out-dir " + d.string()) == 0);
  for (const char* f : {"stationary_melon.csv", "packed_melon.csv", "packed_input.csv", "manifest.json"})
    CHECK(fs::exists(d / f));
}
