// Copyright 2026 The ctxbind Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctxbind: regenerates the context-binding result tables.
//
//   ctxbind matrix
//   ctxbind all --seed 7 --format markdown --out results/
//
// Exit codes: 0 success, 1 golden mismatch under `all`, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ctxbind/experiments.hpp"

namespace {

namespace fs = std::filesystem;
namespace ex = ctxbind::experiments;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out_dir;
  std::string venues;
  std::string golden_dir = CTXBIND_GOLDEN_DIR;
};

const char* kDescriptions[][2] = {
    {"matrix", "strategy x scenario verdicts"},
    {"ablation", "single-element context mutation"},
    {"boundary-sweep", "accept/reject around a 50 m radius"},
    {"geo-accuracy", "fixed-point vs haversine flip error"},
    {"games", "context-binding and transcript transfer games"},
    {"venue-sim", "multi-drop venue, indistinguishability, end-to-end attack"},
    {"epoch-vuln", "vulnerable transfer pairs per venue"},
    {"sensitivity", "latency threshold k* and POI density"},
    {"same-policy", "strategies under matched nonce policies"},
    {"drift", "encoder desynchronization"},
    {"trust-surface", "assumption comparison"},
};

int emit(const std::vector<ctxbind::report::Table>& tables, const Options& opt) {
  const bool md = opt.format == "markdown";
  if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);
  bool first = true;
  for (const auto& t : tables) {
    const std::string body = md ? t.to_markdown() : t.to_csv();
    if (opt.out_dir.empty()) {
      if (!first) std::cout << '\n';
      std::cout << body;
    } else {
      const fs::path path = fs::path(opt.out_dir) / (t.id + (md ? ".md" : ".csv"));
      std::ofstream f(path, std::ios::binary);
      if (!(f << body)) {
        std::cerr << "ctxbind: cannot write " << path << '\n';
        return kExitUsage;
      }
    }
    first = false;
  }
  return 0;
}

int run(const std::string& command, const Options& opt) {
  ex::Config cfg;
  cfg.seed = opt.seed;
  if (!opt.venues.empty()) cfg.venues = ctxbind::deploy::load_venues(opt.venues);

  const auto tables = ex::run_command(command, cfg);
  if (int rc = emit(tables, opt); rc != 0) return rc;
  if (command != "all") return 0;

  const auto checks = ex::compare_golden(tables, opt.golden_dir);
  int matched = 0;
  std::cout << '\n';
  for (const auto& c : checks) {
    std::cout << "golden " << c.table_id << ": " << (c.matched ? "PASS" : "FAIL");
    if (!c.matched) std::cout << " (" << c.detail << ')';
    std::cout << '\n';
    matched += c.matched;
  }
  std::cout << "golden: " << matched << '/' << checks.size() << " tables match\n";
  return matched == static_cast<int>(checks.size()) ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-binding simulator: regenerates the result tables"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "master seed (nonces and keys)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--out", opt.out_dir, "write one file per table into this directory");
  app.add_option("--venues", opt.venues, "JSON venue densities [{name,k50,k100}]")
      ->check(CLI::ExistingFile);
  app.add_option("--golden", opt.golden_dir, "golden CSV directory used by `all`");

  for (const auto& d : kDescriptions) app.add_subcommand(d[0], d[1]);
  app.add_subcommand("all", "every table, then a golden comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "ctxbind: " << e.what() << '\n';
    return kExitUsage;
  }
}
