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

#include "ctxbind/adversary.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "ctxbind/errors.hpp"
#include "ctxbind/proof.hpp"
#include "ctxbind/statement.hpp"

namespace ctxbind::lab {

namespace {

const std::string kPv{fixture::kPolicyVersion};

Drop make_drop(std::string id, const geo::GeoPoint& at = fixture::kTokyo) {
  return Drop{std::move(id), geo::make_params(at, geo::Meters(fixture::kRadiusM)), kPv};
}

PublicSignals statement_for(RelationKind kind, const ChallengeBundle& b) {
  if (!has_session_slots(kind)) return build_public_signals(kind, b.geo, std::nullopt, std::nullopt);
  return build_public_signals(kind, b.geo, ContextTuple{b.drop_id, kPv, b.epoch}, b.n_digest);
}

Claim honest_claim(const KeyRing& keys, RelationKind kind, const ChallengeBundle& b) {
  PublicSignals pub = statement_for(kind, b);
  Proof proof = keys.pk(kind).prove(pub, Witness{b.geo.target});
  return Claim{b.drop_id, std::move(pub), proof, b};
}

}  // namespace

std::string_view to_string(ScenarioId id) {
  static constexpr std::array<std::string_view, 7> k{"A", "B", "C", "D", "E", "F", "G"};
  return k[static_cast<std::size_t>(id)];
}

std::string_view describe(ScenarioId id) {
  static constexpr std::array<std::string_view, 7> k{
      "Honest", "Cross-drop", "Stale epoch", "App. bypass", "Sig. tamper", "Coord-id.",
      "Coord-id."};
  return k[static_cast<std::size_t>(id)];
}

std::string_view attack(ScenarioId id) {
  static constexpr std::array<std::string_view, 7> k{
      "Correct ctx", "Naive replay", "Expired", "Client mod.", "Mod. pub.", "Cross-sess.",
      "Same-epoch"};
  return k[static_cast<std::size_t>(id)];
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "A";
    case Outcome::Reject: return "R";
    case Outcome::NotApplicable: return "N/A";
  }
  return "?";
}

Outcome to_outcome(const Verdict& v) { return v.accepted() ? Outcome::Accept : Outcome::Reject; }

ScenarioResult run_scenario(ScenarioId id, Strategy strategy, NoncePolicy policy,
                            const FaultSet& faults, CircuitProfile profile, std::uint64_t seed) {
  const RelationKind kind = relation_for(strategy, profile);
  if (id == ScenarioId::E && !has_session_slots(kind)) return {};

  KeyRing keys(seed);
  ServerState state(seed, keys, profile);
  state.faults() = faults;
  if (id == ScenarioId::D) state.faults().client_bypass = true;
  state.add_drop(make_drop("drop-X"));
  state.add_drop(make_drop("drop-Y"));

  const ChallengeBundle bx = state.issue_challenge("drop-X", policy);
  Claim claim = honest_claim(keys, kind, bx);

  switch (id) {
    case ScenarioId::A: break;
    case ScenarioId::B:
    case ScenarioId::D: claim.claimed_drop_id = "drop-Y"; break;
    case ScenarioId::C: state.advance_epoch(); break;
    case ScenarioId::E: {
      const ChallengeBundle by = state.issue_challenge("drop-Y", policy);
      if (auto c = context_slot(kind)) {
        claim.pub = claim.pub.with_slot(*c, context_digest({by.drop_id, kPv, by.epoch}));
      } else {
        const std::size_t n = *challenge_slot(kind);
        const FieldElement target = by.n_digest != claim.pub[n]
                                        ? by.n_digest
                                        : challenge_digest(Nonce("attacker-chosen nonce"));
        claim.pub = claim.pub.with_slot(n, target);
      }
      claim.claimed_drop_id = by.drop_id;
      claim.aux = by;
      break;
    }
    case ScenarioId::F:
      if (policy == NoncePolicy::EpochDerived) state.advance_epoch();
      [[fallthrough]];
    case ScenarioId::G: {
      claim.aux = state.issue_challenge("drop-Y", policy);
      claim.claimed_drop_id = "drop-Y";
      break;
    }
  }

  const Verdict v = verify_claim(strategy, state, claim);
  return ScenarioResult{to_outcome(v), v.reject};
}

NoncePolicy matrix_policy(ScenarioId id) {
  return id == ScenarioId::G ? NoncePolicy::EpochDerived : NoncePolicy::PerRequest;
}

Matrix run_full_matrix(std::uint64_t seed) {
  Matrix m{};
  for (std::size_t r = 0; r < kAllScenarios.size(); ++r) {
    for (std::size_t c = 0; c < kMatrixStrategies.size(); ++c) {
      const ScenarioId id = kAllScenarios[r];
      m[r][c] = run_scenario(id, kMatrixStrategies[c], matrix_policy(id), {},
                             CircuitProfile::Generic, seed)
                    .outcome;
    }
  }
  return m;
}

std::string_view to_string(ContextElement e) {
  switch (e) {
    case ContextElement::DropId: return "drop_id";
    case ContextElement::PolicyVersion: return "policy_version";
    case ContextElement::Epoch: return "epoch";
    case ContextElement::ServerNonce: return "server_nonce";
  }
  return "?";
}

std::string_view attack(ContextElement e) {
  switch (e) {
    case ContextElement::DropId: return "Cross-drop replay";
    case ContextElement::PolicyVersion: return "Policy downgrade";
    case ContextElement::Epoch: return "Stale-context reuse";
    case ContextElement::ServerNonce: return "Session hijacking";
  }
  return "?";
}

AblationResult run_ablation(ContextElement element, std::uint64_t seed) {
  KeyRing keys(seed);
  std::mt19937_64 rng(seed);
  const geo::GeoParams geo = geo::make_params(fixture::kTokyo, geo::Meters(fixture::kRadiusM));
  const ContextTuple ctx{"drop-42", kPv, 7};
  const Nonce nonce = Nonce::random(rng);

  // Prototype: five signals, nothing context-shaped to compare against.
  const PublicSignals proto_pub =
      build_public_signals(RelationKind::PrototypeBuggy, geo, std::nullopt, std::nullopt);
  const Proof proto_proof = keys.pk(RelationKind::PrototypeBuggy).prove(proto_pub, {geo.target});
  const bool proto_ok = keys.vk(RelationKind::PrototypeBuggy).verify(proto_pub, proto_proof);

  const PublicSignals pub =
      build_public_signals(RelationKind::LevelIII, geo, ctx, challenge_digest(nonce));
  const Proof proof = keys.pk(RelationKind::LevelIII).prove(pub, {geo.target});

  ContextTuple expected_ctx = ctx;
  Nonce expected_nonce = nonce;
  switch (element) {
    case ContextElement::DropId: expected_ctx.drop_id = "drop-43"; break;
    case ContextElement::PolicyVersion: expected_ctx.policy_version = "3"; break;
    case ContextElement::Epoch: expected_ctx.epoch += 1; break;
    case ContextElement::ServerNonce: expected_nonce = Nonce::random(rng); break;
  }
  const PublicSignals expected = build_public_signals(RelationKind::LevelIII, geo, expected_ctx,
                                                      challenge_digest(expected_nonce));
  const bool level_iii_ok =
      pub == expected && keys.vk(RelationKind::LevelIII).verify(expected, proof);

  return AblationResult{proto_ok ? Outcome::Accept : Outcome::Reject,
                        level_iii_ok ? Outcome::Accept : Outcome::Reject};
}

std::string_view to_string(TranscriptAdversary a) {
  switch (a) {
    case TranscriptAdversary::ReplayOriginal: return "replay_original";
    case TranscriptAdversary::ModifySignals: return "modify_signals";
    case TranscriptAdversary::FreshProofNoWitness: return "fresh_proof_no_witness";
  }
  return "?";
}

bool transcript_transfer_game(TranscriptAdversary adversary, std::uint64_t seed) {
  constexpr RelationKind kKind = RelationKind::LevelIII;
  KeyRing keys(seed);
  std::mt19937_64 rng(seed);
  const geo::GeoParams geo = geo::make_params(fixture::kTokyo, geo::Meters(fixture::kRadiusM));
  const ContextTuple ctx1{"drop-1", kPv, 1};
  const ContextTuple ctx2{"drop-2", kPv, 1};
  const Nonce n1 = Nonce::random(rng);
  const Nonce n2 = Nonce::random(rng);

  const PublicSignals pub1 = build_public_signals(kKind, geo, ctx1, challenge_digest(n1));
  const Proof pi1 = keys.pk(kKind).prove(pub1, {geo.target});
  const PublicSignals pub2 = build_public_signals(kKind, geo, ctx2, challenge_digest(n2));

  // Accept iff the proof verifies, geo matches and the context is ctx2's.
  const VerifyingKey& vk = keys.vk(kKind);
  auto accepted = [&](const PublicSignals& pub, const Proof& proof) {
    return vk.verify(pub, proof) && pub.geo_params() == geo &&
           pub.context_digest() == context_digest(ctx2) &&
           pub.challenge_digest() == challenge_digest(n2) && pub.epoch() == pub2.epoch();
  };

  switch (adversary) {
    case TranscriptAdversary::ReplayOriginal: return accepted(pub1, pi1);
    case TranscriptAdversary::ModifySignals: {
      PublicSignals forged = pub1.with_slot(*context_slot(kKind), *pub2.context_digest());
      forged = forged.with_slot(*challenge_slot(kKind), *pub2.challenge_digest());
      return accepted(forged, pi1);
    }
    case TranscriptAdversary::FreshProofNoWitness: {
      // No handle on the challenger's prover: the best available moves are
      // a prover of its own and blind tag guessing.
      const KeyPair own = keygen(kKind, seed ^ 0x9e3779b97f4a7c15ULL);
      if (accepted(pub2, own.pk.prove(pub2, {geo.target}))) return true;
      std::uniform_int_distribution<int> byte(0, 255);
      for (int attempt = 0; attempt < 64; ++attempt) {
        Proof guess;
        for (auto& b : guess.tag) b = static_cast<std::uint8_t>(byte(rng));
        if (accepted(pub2, guess)) return true;
      }
      return false;
    }
  }
  return false;
}

GameOutcome context_binding_game(Strategy strategy, int n, NoncePolicy policy,
                                 const FaultSet& faults, int trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("context-binding game needs n >= 2");
  if (trials < 1) throw std::invalid_argument("context-binding game needs trials >= 1");

  constexpr CircuitProfile kProfile = CircuitProfile::NonceBound;
  const RelationKind kind = relation_for(strategy, kProfile);
  KeyRing keys(seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(2, n);

  GameOutcome out{0, trials};
  for (int t = 0; t < trials; ++t) {
    ServerState state(seed + 0x100000001ULL * static_cast<std::uint64_t>(t + 1), keys, kProfile);
    state.faults() = faults;
    std::vector<ChallengeBundle> bundles;
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ctx-" + std::to_string(i);
      state.add_drop(make_drop(id));
      bundles.push_back(state.issue_challenge(id, policy));
    }
    const Claim source = honest_claim(keys, kind, bundles[0]);
    const int j = pick(rng);

    bool won = false;
    for (const ChallengeBundle* aux : {&bundles[0], &bundles[j - 1]}) {
      Claim claim = source;
      claim.claimed_drop_id = bundles[j - 1].drop_id;
      claim.aux = *aux;
      won = won || verify_claim(strategy, state, claim).accepted();
    }
    if (won) ++out.wins;
  }
  return out;
}

VenueResult multi_drop_venue(int k, Level level, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("venue needs k >= 1");
  const Strategy strategy = level == Level::II ? Strategy::S3a : Strategy::S3b;
  const RelationKind kind = relation_for(strategy, CircuitProfile::NonceBound);
  KeyRing keys(seed);
  ServerState state(seed, keys, CircuitProfile::NonceBound);

  std::vector<Claim> claims;
  for (int i = 0; i < k; ++i) {
    const std::string id = "venue-drop-" + std::to_string(i);
    state.add_drop(make_drop(id));
    claims.push_back(honest_claim(keys, kind, state.issue_challenge(id, NoncePolicy::EpochDerived)));
  }

  VenueResult r;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Claim transfer = claims[i];
      transfer.claimed_drop_id = claims[j].claimed_drop_id;
      transfer.aux = claims[j].aux;
      ++r.attempts;
      if (verify_claim(strategy, state, transfer).accepted()) ++r.accepted;
    }
  }
  return r;
}

bool shared_epoch_check(int k) {
  if (k < 2) throw std::invalid_argument("shared-epoch check needs k >= 2");
  const geo::GeoParams geo = geo::make_params(fixture::kTokyo, geo::Meters(fixture::kRadiusM));
  const FieldElement n = challenge_digest(Nonce(std::string(16, '\x5a')));
  constexpr std::uint64_t kEpoch = 7;

  std::vector<PublicSignals> ii;
  std::vector<PublicSignals> iii;
  for (int i = 0; i < k; ++i) {
    const ContextTuple ctx{"drop-" + std::to_string(i), kPv, kEpoch};
    ii.push_back(build_public_signals(RelationKind::LevelII, geo, ctx, n));
    iii.push_back(build_public_signals(RelationKind::LevelIII, geo, ctx, n));
  }
  const std::vector<std::size_t> only_c{*context_slot(RelationKind::LevelIII)};
  for (int a = 0; a < k; ++a) {
    if (ii[a].to_json() != ii[0].to_json()) return false;
    for (int b = a + 1; b < k; ++b) {
      if (differing_slots(iii[a], iii[b]) != only_c) return false;
    }
  }
  return true;
}

Outcome drift_outcome(Strategy strategy, std::optional<DriftId> variant, std::uint64_t seed) {
  constexpr CircuitProfile kProfile = CircuitProfile::NonceBound;
  KeyRing keys(seed);
  ServerState state(seed, keys, kProfile);
  state.faults().drift = variant;
  state.add_drop(make_drop("drop-X"));
  const Claim claim = honest_claim(keys, relation_for(strategy, kProfile),
                                   state.issue_challenge("drop-X", NoncePolicy::PerRequest));
  return to_outcome(verify_claim(strategy, state, claim));
}

DriftRow drift_experiment(std::optional<DriftId> variant, std::uint64_t seed) {
  return DriftRow{drift_outcome(Strategy::S2b, variant, seed),
                  drift_outcome(Strategy::S2c_hardened, variant, seed),
                  drift_outcome(Strategy::S3b, variant, seed)};
}

E2EResult e2e_cross_drop(ScenarioId scenario, std::uint64_t seed) {
  if (scenario != ScenarioId::F && scenario != ScenarioId::G) {
    throw std::invalid_argument("end-to-end attack is defined for scenarios F and G");
  }
  const NoncePolicy policy =
      scenario == ScenarioId::F ? NoncePolicy::PerRequest : NoncePolicy::EpochDerived;
  KeyRing keys(seed);
  ServerState state(seed, keys, CircuitProfile::NonceBound);
  state.add_drop(make_drop("shibuya-A", fixture::kShibuya));
  state.add_drop(make_drop("shibuya-B", fixture::kShibuya));
  const ChallengeBundle a = state.issue_challenge("shibuya-A", policy);
  const ChallengeBundle b = state.issue_challenge("shibuya-B", policy);

  auto transfer = [&](Strategy s) {
    Claim claim = honest_claim(keys, relation_for(s, CircuitProfile::NonceBound), a);
    claim.claimed_drop_id = b.drop_id;
    claim.aux = b;
    return to_outcome(verify_claim(s, state, claim));
  };
  return E2EResult{transfer(Strategy::S3a), transfer(Strategy::S3b),
                   differing_slots(statement_for(RelationKind::LevelIII, a),
                                   statement_for(RelationKind::LevelIII, b))};
}

bool resists_scenario_g(Strategy strategy, std::uint64_t seed) {
  return run_scenario(ScenarioId::G, strategy, NoncePolicy::EpochDerived, {},
                      CircuitProfile::NonceBound, seed)
             .outcome == Outcome::Reject;
}

}  // namespace ctxbind::lab
