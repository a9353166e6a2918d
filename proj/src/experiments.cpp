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

#include "ctxbind/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ctxbind/adversary.hpp"
#include "ctxbind/errors.hpp"
#include "ctxbind/geo.hpp"
#include "ctxbind/proof.hpp"

namespace ctxbind::experiments {

using report::Table;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string word(lab::Outcome o) {
  switch (o) {
    case lab::Outcome::Accept: return "Accept";
    case lab::Outcome::Reject: return "Reject";
    case lab::Outcome::NotApplicable: return "N/A";
  }
  return "?";
}

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

std::string faults_label(const FaultSet& f) {
  std::string s;
  auto add = [&](std::string_view x) {
    if (!s.empty()) s += '+';
    s += x;
  };
  if (f.mapping_failure) add("mapping_failure");
  if (f.nonce_reuse) add("nonce_reuse");
  if (f.client_bypass) add("client_bypass");
  if (f.omit_pub7_check) add("omit_pub7_check");
  if (f.drift) add(to_string(*f.drift));
  return s.empty() ? "none" : s;
}

std::string state_bound(Strategy s) {
  return s == Strategy::S2c_default || s == Strategy::S2c_hardened ? "O(k*U)" : "O(1)";
}

constexpr std::array<Strategy, 5> kAssumptionStrategies{
    Strategy::S2b, Strategy::S2c_hardened, Strategy::S2d, Strategy::S3a, Strategy::S3b};

}  // namespace

Table matrix_table(const Config& cfg) {
  Table t;
  t.id = "matrix";
  t.title = "Binding strategy comparison: seven strategies x seven scenarios";
  t.notes = {"A = accept, R = reject, N/A = no context signals to tamper with",
             "F runs with per-request nonces (N1 != N2); G with one shared epoch nonce"};
  t.columns = {"Scenario", "Desc."};
  for (auto c : lab::kMatrixColumns) t.columns.emplace_back(c);
  const lab::Matrix m = lab::run_full_matrix(cfg.seed);
  for (std::size_t r = 0; r < lab::kAllScenarios.size(); ++r) {
    const auto id = lab::kAllScenarios[r];
    std::vector<std::string> row{std::string(lab::to_string(id)) + ": " +
                                     std::string(lab::describe(id)),
                                 std::string(lab::attack(id))};
    for (auto o : m[r]) row.emplace_back(lab::to_string(o));
    t.add_row(std::move(row));
  }
  return t;
}

Table ablation_table(const Config& cfg) {
  Table t;
  t.id = "ablation";
  t.title = "Context-binding ablation: valid proof reused with one element mutated";
  t.columns = {"Mutated element", "Simulated attack", "Prototype", "Level (iii)"};
  for (auto e : lab::kAllElements) {
    const auto r = lab::run_ablation(e, cfg.seed);
    t.add_row({std::string(lab::to_string(e)), std::string(lab::attack(e)), word(r.prototype),
               word(r.level_iii)});
  }
  return t;
}

Table boundary_sweep_table(const Config& cfg) {
  Table t;
  t.id = "boundary-sweep";
  t.title = "Boundary sweep at 50 m radius, 4 bearings, 2 sites";
  t.notes = {"distance in metres; a cell is Mixed if the four bearings disagree"};
  t.columns = {"Distance", "Tokyo Prototype", "Tokyo Level (iii)", "Helsinki Prototype",
               "Helsinki Level (iii)"};
  const KeyRing keys(cfg.seed);
  auto cell = [&](RelationKind kind, const geo::GeoPoint& site, double d) {
    const auto params = geo::make_params(site, geo::Meters(lab::fixture::kRadiusM));
    const ContextTuple ctx{"drop-sweep", std::string(lab::fixture::kPolicyVersion), 1};
    const FieldElement n = challenge_digest(Nonce("sweep-nonce"));
    const PublicSignals pub =
        has_session_slots(kind) ? build_public_signals(kind, params, ctx, n)
                                : build_public_signals(kind, params, std::nullopt, std::nullopt);
    int accepted = 0;
    for (auto b : {geo::Bearing::North, geo::Bearing::East, geo::Bearing::South,
                   geo::Bearing::West}) {
      const Witness w{geo::offset_point(site, b, geo::Meters(d)), 1};
      try {
        if (keys.vk(kind).verify(pub, keys.pk(kind).prove(pub, w))) ++accepted;
      } catch (const ProveRefused&) {
      }
    }
    return accepted == 4 ? "Accept" : accepted == 0 ? "Reject" : "Mixed";
  };
  for (int step = 0; step <= 8; ++step) {
    const double d = 48.0 + 0.5 * step;
    t.add_row({fixed(d, 1), cell(RelationKind::PrototypeBuggy, lab::fixture::kTokyo, d),
               cell(RelationKind::LevelIII, lab::fixture::kTokyo, d),
               cell(RelationKind::PrototypeBuggy, lab::fixture::kHelsinki, d),
               cell(RelationKind::LevelIII, lab::fixture::kHelsinki, d)});
  }
  return t;
}

Table geo_accuracy_table(const Config&) {
  Table t;
  t.id = "geo-accuracy";
  t.title = "Maximum flip-distance error, fixed-point predicate vs haversine";
  t.notes = {"metres; max over 8 bearings of |flip distance - radius|",
             "haversine on a 6371 km sphere"};
  t.columns = {"Latitude"};
  for (double r : geo::kSweepRadii) t.columns.push_back(fixed(r, 0) + " m");
  const auto cells = geo::accuracy_sweep();
  for (std::size_t i = 0; i < geo::kSweepLatitudes.size(); ++i) {
    const double lat = geo::kSweepLatitudes[i];
    std::vector<std::string> row{lat == static_cast<int>(lat) ? fixed(lat, 0) : fixed(lat, 2)};
    for (std::size_t j = 0; j < geo::kSweepRadii.size(); ++j) {
      row.push_back(fixed(cells[i * geo::kSweepRadii.size() + j].max_error_m, 3));
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table games_table(const Config& cfg) {
  Table t;
  t.id = "games";
  t.title = "Context-binding game: canonical replay adversary, n = 5";
  t.notes = {"win_rate = wins / trials"};
  t.columns = {"Strategy", "Nonce", "Faults", "Trials", "Wins", "Win rate"};
  constexpr int kN = 5;
  constexpr int kTrials = 100;
  auto row = [&](Strategy s, NoncePolicy p, const FaultSet& f) {
    const auto g = lab::context_binding_game(s, kN, p, f, kTrials, cfg.seed);
    t.add_row({std::string(to_string(s)), std::string(to_string(p)), faults_label(f),
               std::to_string(g.trials), std::to_string(g.wins), fixed(g.win_rate(), 2)});
  };
  FaultSet mapping;
  mapping.mapping_failure = true;
  FaultSet reuse;
  reuse.nonce_reuse = true;
  for (Strategy s : kAllStrategies) {
    row(s, NoncePolicy::PerRequest, {});
    switch (s) {
      case Strategy::S2b:
      case Strategy::S2c_default:
      case Strategy::S2c_hardened:
      case Strategy::S2d:
        row(s, NoncePolicy::PerRequest, mapping);
        row(s, NoncePolicy::PerRequest, reuse);
        break;
      case Strategy::S3a:
      case Strategy::S3b: row(s, NoncePolicy::EpochDerived, {}); break;
      default: break;
    }
  }
  return t;
}

Table transfer_game_table(const Config& cfg) {
  Table t;
  t.id = "transfer-game";
  t.title = "Transcript transfer game: adversary without witness or prover";
  t.columns = {"Adversary", "Result"};
  for (auto a : lab::kAllTranscriptAdversaries) {
    t.add_row({std::string(lab::to_string(a)),
               lab::transcript_transfer_game(a, cfg.seed) ? "win" : "lose"});
  }
  return t;
}

Table multi_drop_table(const Config& cfg) {
  Table t;
  t.id = "multi-drop";
  t.title = "Multi-drop venue: all ordered cross-drop transfers under one epoch nonce";
  t.columns = {"k", "Attempts", "Accepted (ii)", "Accepted (iii)"};
  for (int k : {1, 5, 10, 20}) {
    const auto ii = lab::multi_drop_venue(k, lab::Level::II, cfg.seed);
    const auto iii = lab::multi_drop_venue(k, lab::Level::III, cfg.seed);
    t.add_row({std::to_string(k), std::to_string(ii.attempts), std::to_string(ii.accepted),
               std::to_string(iii.accepted)});
  }
  return t;
}

Table shared_epoch_table(const Config&) {
  Table t;
  t.id = "shared-epoch";
  t.title = "Same-epoch indistinguishability: 7-signal vectors identical, 8-signal differ in slot 5";
  t.columns = {"k", "Holds"};
  for (int k : {2, 5, 10, 23}) t.add_row({std::to_string(k), yes_no(lab::shared_epoch_check(k))});
  return t;
}

Table e2e_table(const Config& cfg) {
  Table t;
  t.id = "e2e-cross-drop";
  t.title = "End-to-end cross-drop transfer, two co-located drops (Shibuya, 50 m)";
  t.columns = {"Scenario", "Level (ii)", "Level (iii)", "Differing target slots"};
  for (auto id : {lab::ScenarioId::F, lab::ScenarioId::G}) {
    const auto r = lab::e2e_cross_drop(id, cfg.seed);
    std::string slots;
    for (auto s : r.target_slot_diff) slots += (slots.empty() ? "" : " ") + std::to_string(s);
    t.add_row({std::string(lab::to_string(id)), word(r.level_ii), word(r.level_iii), slots});
  }
  return t;
}

Table epoch_vuln_table(const Config& cfg) {
  Table t;
  t.id = "epoch-vuln";
  t.title = "Epoch-window vulnerability (60 s epoch, 10-epoch session, k = drops within 50 m)";
  t.notes = {"pairs/epoch at level (ii) = k(k-1); level (iii) = 0"};
  t.columns = {"Venue", "k", "Pairs/epoch (ii)", "Session (ii)", "(iii)"};
  for (const auto& v : deploy::venue_report(cfg.venues)) {
    t.add_row({v.name, std::to_string(v.k), std::to_string(v.pairs_per_epoch),
               std::to_string(v.session_pairs), std::to_string(v.level_iii_pairs)});
  }
  return t;
}

Table sensitivity_table(const Config&) {
  Table t;
  t.id = "sensitivity";
  t.title = "Per-request nonce threshold: k* where 2c exceeds 1000 ms";
  t.notes = {"milliseconds; affine model e2e = 50 + 70k + overhead + trips*RTT (fitted, not measured)",
             "2c uses per-request nonces (k trips), 3b one epoch nonce (1 trip)"};
  t.columns = {"RTT", "k* (2c)", "2c at k=10", "3b at k=10"};
  for (std::int64_t rtt : {50, 100, 200, 300}) {
    const auto ks = deploy::k_star(Strategy::S2c_hardened, NoncePolicy::PerRequest, rtt);
    t.add_row({std::to_string(rtt), ks ? std::to_string(*ks) : "none",
               std::to_string(deploy::e2e_latency(Strategy::S2c_hardened, NoncePolicy::PerRequest,
                                                  10, rtt)),
               std::to_string(
                   deploy::e2e_latency(Strategy::S3b, NoncePolicy::EpochDerived, 10, rtt))});
  }
  return t;
}

Table poi_density_table(const Config& cfg) {
  Table t;
  t.id = "poi-density";
  t.title = "POI density (OSM amenity/shop, 2026-03-17)";
  t.columns = {"Venue", "50 m", "100 m"};
  for (const auto& v : cfg.venues) {
    t.add_row({v.name, std::to_string(v.k50), std::to_string(v.k100)});
  }
  return t;
}

Table same_policy_table(const Config& cfg) {
  Table t;
  t.id = "same-policy";
  t.title = "Controlled comparison under matched nonce policies (k = 10, RTT = 100 ms)";
  t.notes = {"E2E in milliseconds from the fitted latency model",
             "|A_op| is assumption-count metadata"};
  t.columns = {"Strategy", "Nonce", "Sc. F", "Sc. G", "|A_op|", "State", "E2E"};
  for (NoncePolicy p : {NoncePolicy::EpochDerived, NoncePolicy::PerRequest}) {
    for (Strategy s : {Strategy::S2c_hardened, Strategy::S2d, Strategy::S3a, Strategy::S3b}) {
      auto run = [&](lab::ScenarioId id) {
        return std::string(to_string(
            lab::run_scenario(id, s, p, {}, CircuitProfile::NonceBound, cfg.seed).outcome));
      };
      t.add_row({std::string(to_string(s)), std::string(to_string(p)), run(lab::ScenarioId::F),
                 run(lab::ScenarioId::G), std::to_string(info(s).op_assumption_count),
                 state_bound(s), std::to_string(deploy::e2e_latency(s, p, 10, 100))});
    }
  }
  return t;
}

Table drift_table(const Config& cfg) {
  Table t;
  t.id = "drift";
  t.title = "Operational drift: honest claims under encoder desynchronization";
  t.notes = {"Reject here is a false negative: the claim is honest"};
  t.columns = {"Drift scenario", "Recomp. (2b)", "Stored (2c-hardened)", "In-proof (3b)"};
  auto add = [&](std::string label, std::optional<DriftId> d) {
    const auto r = lab::drift_experiment(d, cfg.seed);
    t.add_row({std::move(label), word(r.recompute), word(r.stored), word(r.in_proof)});
  };
  add("Baseline", std::nullopt);
  for (DriftId d : kAllDrifts) {
    add(std::string(to_string(d)) + ": " + std::string(describe(d)), d);
  }
  return t;
}

Table trust_surface_table(const Config& cfg) {
  Table t;
  t.id = "trust-surface";
  t.title = "Assumption comparison (C = cryptographic, O = operational, - = not required)";
  t.notes = {"assumption rows and |A_op| are metadata; the last three rows are measured",
             "2c column: drift row uses 2c-hardened"};
  t.columns = {"Assumption", "2b", "2c", "2d", "3a", "3b"};
  const std::vector<std::vector<std::string>> rows{
      {"Proof soundness", "C", "C", "C", "C", "C"},
      {"Drop-identity binding", "O", "O", "O", "-", "C"},
      {"Policy-version binding", "O", "O", "O", "-", "C"},
      {"Nonce-to-drop mapping", "O", "O", "O", "O", "-"},
      {"Nonce uniqueness", "O", "O", "O", "O", "-"},
      {"Digest synchronization", "O", "-", "-", "-", "-"},
      {"Signature-key secrecy", "-", "-", "O", "-", "-"},
      {"Issuance correctness", "O", "O", "O", "O", "O"},
      {"Challenge freshness", "O", "O", "O", "O", "O"},
  };
  for (const auto& r : rows) t.add_row(r);

  std::vector<std::string> aop{"|A_op|"};
  std::vector<std::string> g_default{"Scenario G resistant (2c-default)?"};
  std::vector<std::string> g_hardened{"Scenario G resistant (2c-hardened)?"};
  std::vector<std::string> drift{"Drift resilient?"};
  for (Strategy s : kAssumptionStrategies) {
    aop.push_back(std::to_string(info(s).op_assumption_count));
    const Strategy as_default = s == Strategy::S2c_hardened ? Strategy::S2c_default : s;
    g_default.push_back(yes_no(lab::resists_scenario_g(as_default, cfg.seed)));
    g_hardened.push_back(yes_no(lab::resists_scenario_g(s, cfg.seed)));
    bool resilient = true;
    for (DriftId d : kAllDrifts) {
      resilient = resilient && lab::drift_outcome(s, d, cfg.seed) == lab::Outcome::Accept;
    }
    drift.push_back(yes_no(resilient));
  }
  t.add_row(std::move(aop));
  t.add_row(std::move(g_default));
  t.add_row(std::move(g_hardened));
  t.add_row(std::move(drift));
  return t;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> k{
      "matrix",     "ablation",    "boundary-sweep", "geo-accuracy", "games", "venue-sim",
      "epoch-vuln", "sensitivity", "same-policy",    "drift",        "trust-surface"};
  return k;
}

bool is_command(std::string_view name) {
  for (const auto& c : commands()) {
    if (c == name) return true;
  }
  return name == "all";
}

std::vector<Table> run_command(std::string_view name, const Config& cfg) {
  if (name == "matrix") return {matrix_table(cfg)};
  if (name == "ablation") return {ablation_table(cfg)};
  if (name == "boundary-sweep") return {boundary_sweep_table(cfg)};
  if (name == "geo-accuracy") return {geo_accuracy_table(cfg)};
  if (name == "games") return {games_table(cfg), transfer_game_table(cfg)};
  if (name == "venue-sim") return {multi_drop_table(cfg), shared_epoch_table(cfg), e2e_table(cfg)};
  if (name == "epoch-vuln") return {epoch_vuln_table(cfg)};
  if (name == "sensitivity") return {sensitivity_table(cfg), poi_density_table(cfg)};
  if (name == "same-policy") return {same_policy_table(cfg)};
  if (name == "drift") return {drift_table(cfg)};
  if (name == "trust-surface") return {trust_surface_table(cfg)};
  if (name == "all") {
    std::vector<Table> out;
    for (const auto& c : commands()) {
      for (auto& t : run_command(c, cfg)) out.push_back(std::move(t));
    }
    return out;
  }
  throw std::invalid_argument("unknown command: " + std::string(name));
}

std::vector<GoldenCheck> compare_golden(const std::vector<Table>& tables, const std::string& dir) {
  std::vector<GoldenCheck> out;
  for (const auto& t : tables) {
    GoldenCheck c{t.id, false, {}};
    std::ifstream in(dir + "/" + t.id + ".csv", std::ios::binary);
    if (!in) {
      c.detail = "missing golden file";
      out.push_back(std::move(c));
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string expected = buf.str();
    const std::string actual = t.to_csv();
    c.matched = expected == actual;
    if (!c.matched) {
      std::istringstream e(expected), a(actual);
      std::string le, la;
      int line = 0;
      while (true) {
        ++line;
        const bool ge = static_cast<bool>(std::getline(e, le));
        const bool ga = static_cast<bool>(std::getline(a, la));
        if (!ge && !ga) break;
        if (!ge || !ga || le != la) {
          c.detail = "line " + std::to_string(line) + ": expected '" + (ge ? le : "<eof>") +
                     "', got '" + (ga ? la : "<eof>") + "'";
          break;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ctxbind::experiments
