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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctxbind/deployment.hpp"
#include "ctxbind/report.hpp"

// Regenerates every result table. Tables are structural: they do not
// depend on the seed, which only drives nonces and keys.
namespace ctxbind::experiments {

struct Config {
  std::uint64_t seed = 1;
  std::vector<deploy::VenueDensity> venues = deploy::builtin_venues();
};

report::Table matrix_table(const Config& cfg);
report::Table ablation_table(const Config& cfg);
report::Table boundary_sweep_table(const Config& cfg);
report::Table geo_accuracy_table(const Config& cfg);
report::Table games_table(const Config& cfg);
report::Table transfer_game_table(const Config& cfg);
report::Table multi_drop_table(const Config& cfg);
report::Table shared_epoch_table(const Config& cfg);
report::Table e2e_table(const Config& cfg);
report::Table epoch_vuln_table(const Config& cfg);
report::Table sensitivity_table(const Config& cfg);
report::Table poi_density_table(const Config& cfg);
report::Table same_policy_table(const Config& cfg);
report::Table drift_table(const Config& cfg);
report::Table trust_surface_table(const Config& cfg);

/// Command names in `all` order.
const std::vector<std::string>& commands();
bool is_command(std::string_view name);

/// Tables produced by one command. Throws std::invalid_argument for an
/// unknown name.
std::vector<report::Table> run_command(std::string_view name, const Config& cfg);

struct GoldenCheck {
  std::string table_id;
  bool matched = false;
  std::string detail;  // first differing line, or why the file is missing
};

/// Compares each table's CSV against <dir>/<id>.csv byte for byte.
std::vector<GoldenCheck> compare_golden(const std::vector<report::Table>& tables,
                                        const std::string& dir);

}  // namespace ctxbind::experiments
