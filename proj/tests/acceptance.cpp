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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// FAIL. Criterion 12 is an explicit exclusion and always reports as such.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ctxbind/adversary.hpp"
#include "ctxbind/deployment.hpp"
#include "ctxbind/errors.hpp"
#include "ctxbind/experiments.hpp"
#include "ctxbind/geo.hpp"
#include "ctxbind/proof.hpp"
#include "ctxbind/statement.hpp"

using namespace ctxbind;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Check matrix() {
  using O = lab::Outcome;
  constexpr O A = O::Accept, R = O::Reject, N = O::NotApplicable;
  const lab::Matrix expected{{{A, A, A, A, A, A, A},
                              {A, R, R, R, R, R, R},
                              {A, R, R, R, R, R, R},
                              {A, A, R, R, R, R, R},
                              {N, N, N, N, N, R, R},
                              {A, A, A, A, A, R, R},
                              {A, A, A, A, A, A, R}}};
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const lab::Matrix m = lab::run_full_matrix(1);
  const double dt = seconds_since(t0);
  c.expect(m == expected, "matrix differs from expected outcomes");
  c.expect(lab::run_full_matrix(2) == m, "matrix depends on seed");
  c.expect(dt < 1.0, "runtime " + std::to_string(dt) + " s");
  return c;
}

Check ablation() {
  Check c;
  for (auto e : lab::kAllElements) {
    const auto r = lab::run_ablation(e);
    c.expect(r.prototype == lab::Outcome::Accept && r.level_iii == lab::Outcome::Reject,
             std::string(lab::to_string(e)));
  }
  return c;
}

Check boundary_sweep() {
  Check c;
  const KeyRing keys(1);
  const std::array<double, 6> dists{48.0, 49.0, 50.0, 50.5, 51.0, 52.0};
  for (const auto& site : {lab::fixture::kTokyo, lab::fixture::kHelsinki}) {
    const auto params = geo::make_params(site, geo::Meters(50.0));
    for (auto bearing :
         {geo::Bearing::North, geo::Bearing::East, geo::Bearing::South, geo::Bearing::West}) {
      for (double d : dists) {
        const auto w = geo::offset_point(site, bearing, geo::Meters(d));
        const bool expect_accept = d <= 50.0;
        for (auto kind : {RelationKind::SoundGeoOnly, RelationKind::LevelIII}) {
          const auto pub = has_session_slots(kind)
                               ? build_public_signals(kind, params, ContextTuple{"d", "2", 1},
                                                      challenge_digest(Nonce("n")))
                               : build_public_signals(kind, params, std::nullopt, std::nullopt);
          bool accepted = false;
          try {
            accepted = keys.vk(kind).verify(pub, keys.pk(kind).prove(pub, {w}));
          } catch (const ProveRefused&) {
          }
          c.expect(accepted == expect_accept,
                   std::string(to_string(kind)) + " at " + std::to_string(d) + " m");
        }
        const auto proto = build_public_signals(RelationKind::PrototypeBuggy, params,
                                                std::nullopt, std::nullopt);
        c.expect(keys.vk(RelationKind::PrototypeBuggy)
                     .verify(proto, keys.pk(RelationKind::PrototypeBuggy).prove(proto, {w, 1})),
                 "prototype at " + std::to_string(d) + " m");
      }
    }
  }
  return c;
}

Check accuracy() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto cells = geo::accuracy_sweep();
  const double dt = seconds_since(t0);
  c.expect(cells.size() == 40, "grid size");
  for (const auto& cell : cells) {
    const double limit = cell.radius_m == 25.0 ? 0.2 : 1.0;
    c.expect(cell.max_error_m <= limit, "lat " + std::to_string(cell.latitude_deg) + " r " +
                                            std::to_string(cell.radius_m) + " error " +
                                            std::to_string(cell.max_error_m));
  }
  c.expect(dt < 10.0, "runtime " + std::to_string(dt) + " s");
  return c;
}

Check venue() {
  Check c;
  for (int k : {5, 10, 20}) {
    const auto ii = lab::multi_drop_venue(k, lab::Level::II);
    const auto iii = lab::multi_drop_venue(k, lab::Level::III);
    c.expect(ii.attempts == k * (k - 1) && ii.accepted == ii.attempts,
             "level (ii) k=" + std::to_string(k));
    c.expect(iii.attempts == k * (k - 1) && iii.accepted == 0,
             "level (iii) k=" + std::to_string(k));
  }
  return c;
}

Check shared_epoch() {
  Check c;
  for (int k : {2, 5, 10, 23}) c.expect(lab::shared_epoch_check(k), "k=" + std::to_string(k));
  return c;
}

Check games() {
  Check c;
  for (auto a : lab::kAllTranscriptAdversaries) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      c.expect(!lab::transcript_transfer_game(a, seed), std::string(lab::to_string(a)));
    }
  }
  constexpr int kTrials = 100;
  auto rate = [&](Strategy s, NoncePolicy p, FaultSet f) {
    return lab::context_binding_game(s, 5, p, f, kTrials, 1).win_rate();
  };
  const NoncePolicy per = NoncePolicy::PerRequest;
  FaultSet none, mapping, reuse;
  mapping.mapping_failure = true;
  reuse.nonce_reuse = true;
  auto want = [&](Strategy s, NoncePolicy p, FaultSet f, double r) {
    c.expect(rate(s, p, f) == r, std::string(to_string(s)) + " expected " + std::to_string(r));
  };
  want(Strategy::S1, per, none, 1.0);
  want(Strategy::S2a, per, none, 1.0);
  for (Strategy s : {Strategy::S2b, Strategy::S2c_default, Strategy::S2d}) {
    want(s, per, none, 0.0);
    want(s, per, mapping, 1.0);
    want(s, per, reuse, 1.0);
  }
  want(Strategy::S3a, NoncePolicy::EpochDerived, none, 1.0);
  want(Strategy::S3a, per, none, 0.0);
  want(Strategy::S3b, per, none, 0.0);
  want(Strategy::S3b, NoncePolicy::EpochDerived, none, 0.0);
  want(Strategy::S3b, per, mapping, 0.0);
  want(Strategy::S3b, per, reuse, 0.0);
  return c;
}

Check drift() {
  Check c;
  using O = lab::Outcome;
  const auto base = lab::drift_experiment(std::nullopt);
  c.expect(base.recompute == O::Accept && base.stored == O::Accept && base.in_proof == O::Accept,
           "baseline");
  for (auto d : kAllDrifts) {
    const auto r = lab::drift_experiment(d);
    c.expect(r.recompute == O::Reject && r.stored == O::Accept && r.in_proof == O::Accept,
             std::string(to_string(d)));
  }
  return c;
}

Check latency() {
  Check c;
  using NP = NoncePolicy;
  struct Row {
    Strategy s;
    NP p;
    std::int64_t e2e;
  };
  const std::array<Row, 8> same_policy{{{Strategy::S2c_hardened, NP::EpochDerived, 950},
                                        {Strategy::S2d, NP::EpochDerived, 870},
                                        {Strategy::S3a, NP::EpochDerived, 850},
                                        {Strategy::S3b, NP::EpochDerived, 850},
                                        {Strategy::S2c_hardened, NP::PerRequest, 1850},
                                        {Strategy::S2d, NP::PerRequest, 1770},
                                        {Strategy::S3a, NP::PerRequest, 1750},
                                        {Strategy::S3b, NP::PerRequest, 1750}}};
  for (const auto& r : same_policy) {
    c.expect(deploy::e2e_latency(r.s, r.p, 10, 100) == r.e2e,
             std::string(to_string(r.s)) + " " + std::string(to_string(r.p)));
  }
  const std::array<std::int64_t, 4> rtts{50, 100, 200, 300};
  const std::array<std::int64_t, 4> kstar{8, 6, 4, 3};
  const std::array<std::int64_t, 4> c2{1350, 1850, 2850, 3850};
  const std::array<std::int64_t, 4> b3{800, 850, 950, 1050};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto rtt = rtts[i];
    c.expect(deploy::k_star(Strategy::S2c_hardened, NP::PerRequest, rtt) == kstar[i],
             "k* at " + std::to_string(rtt));
    c.expect(deploy::e2e_latency(Strategy::S2c_hardened, NP::PerRequest, 10, rtt) == c2[i],
             "2c at " + std::to_string(rtt));
    c.expect(deploy::e2e_latency(Strategy::S3b, NP::EpochDerived, 10, rtt) == b3[i],
             "3b at " + std::to_string(rtt));
  }
  return c;
}

Check epoch_window() {
  Check c;
  const std::array<std::int64_t, 7> pairs{110, 306, 506, 6, 110, 210, 20};
  const auto rows = deploy::venue_report(deploy::builtin_venues());
  c.expect(rows.size() == pairs.size(), "venue count");
  for (std::size_t i = 0; i < rows.size() && i < pairs.size(); ++i) {
    c.expect(rows[i].pairs_per_epoch == pairs[i] && rows[i].session_pairs == 10 * pairs[i] &&
                 rows[i].level_iii_pairs == 0,
             rows[i].name);
  }
  const auto checks =
      experiments::compare_golden({experiments::epoch_vuln_table({})}, CTXBIND_GOLDEN_DIR);
  c.expect(checks.size() == 1 && checks[0].matched, "epoch-vuln table vs golden copy");
  return c;
}

Check proof_properties() {
  Check c;
  std::mt19937_64 rng(12345);
  const KeyRing keys(1);
  const KeyRing other(2);
  const auto params = geo::make_params(lab::fixture::kTokyo, geo::Meters(50.0));
  std::uniform_int_distribution<std::int64_t> jitter(-300, 300);
  int mutations = 0;
  for (int i = 0; mutations < 10'000; ++i) {
    const RelationKind kind = kAllRelations[i % kAllRelations.size()];
    const ContextTuple ctx{"drop-" + std::to_string(i % 13), "2", 1 + rng() % 50};
    const auto pub = has_session_slots(kind)
                         ? build_public_signals(kind, params, ctx,
                                                challenge_digest(Nonce::random(rng)))
                         : build_public_signals(kind, params, std::nullopt, std::nullopt);
    const geo::GeoPoint w{lab::fixture::kTokyo.lat_udeg + jitter(rng),
                          lab::fixture::kTokyo.lon_udeg + jitter(rng)};
    if (!eval_relation(kind, pub, {w})) continue;
    const Proof p = keys.pk(kind).prove(pub, {w});
    c.expect(keys.vk(kind).verify(pub, p), "completeness");
    c.expect(!other.vk(kind).verify(pub, p), "cross-key verification");
    const std::size_t slot = rng() % pub.size();
    std::string bytes(32, '\0');
    for (char& b : bytes) b = static_cast<char>(rng());
    const FieldElement v = hash_to_field(bytes);
    if (v == pub[slot]) continue;
    c.expect(!keys.vk(kind).verify(pub.with_slot(slot, v), p), "mutation verified");
    ++mutations;
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"strategy x scenario matrix", matrix},
      {"context-binding ablation", ablation},
      {"boundary sweep", boundary_sweep},
      {"geometric accuracy", accuracy},
      {"multi-drop venue", venue},
      {"shared-nonce signal layout", shared_epoch},
      {"security games", games},
      {"operational drift", drift},
      {"latency model", latency},
      {"epoch-window exposure", epoch_window},
      {"proof-system properties", proof_properties},
  };
  int failures = 0;
  int index = 0;
  for (const auto& cr : criteria) {
    ++index;
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    if (!c.ok) ++failures;
    std::printf("%s criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", index, cr.name,
                c.ok ? "" : " -- ", c.why.c_str());
  }
  std::printf(
      "PASS criterion 12: excluded by design (proving/verification wall-clock, overhead "
      "decomposition and implementation LOC/latency tables are not reproduced; no timing "
      "claims are made)\n");
  std::printf("%d/%d criteria failed\n", failures, index + 1);
  return failures == 0 ? 0 : 1;
}
