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

// Randomized invariants. Every generator is seeded so failures reproduce.
#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "ctxbind/adversary.hpp"
#include "ctxbind/codec.hpp"
#include "ctxbind/errors.hpp"
#include "ctxbind/proof.hpp"
#include "ctxbind/server.hpp"
#include "ctxbind/statement.hpp"

namespace ctxbind {
namespace {

const geo::GeoPoint kTokyo{35'660'000, 139'700'000};

FieldElement random_field(std::mt19937_64& rng) {
  std::string bytes(32, '\0');
  for (char& c : bytes) c = static_cast<char>(rng());
  return hash_to_field(bytes);
}

TEST(Property, MutatedSignalsNeverVerify) {
  std::mt19937_64 rng(2024);
  const KeyRing keys(7);
  const auto params = geo::make_params(kTokyo, geo::Meters(50.0));
  for (RelationKind kind : kAllRelations) {
    const PublicSignals pub =
        has_session_slots(kind)
            ? build_public_signals(kind, params, ContextTuple{"drop", "2", 3},
                                   challenge_digest(Nonce("nonce")))
            : build_public_signals(kind, params, std::nullopt, std::nullopt);
    const Proof proof = keys.pk(kind).prove(pub, {kTokyo});
    ASSERT_TRUE(keys.vk(kind).verify(pub, proof));
    for (int i = 0; i < 2'500; ++i) {
      const std::size_t slot = rng() % pub.size();
      FieldElement v = random_field(rng);
      if (v == pub[slot]) continue;
      EXPECT_FALSE(keys.vk(kind).verify(pub.with_slot(slot, v), proof));
    }
  }
}

TEST(Property, FlippedTagBitsNeverVerify) {
  const KeyRing keys(7);
  const auto pub = build_public_signals(RelationKind::SoundGeoOnly,
                                        geo::make_params(kTokyo, geo::Meters(50.0)),
                                        std::nullopt, std::nullopt);
  const Proof proof = keys.pk(RelationKind::SoundGeoOnly).prove(pub, {kTokyo});
  for (std::size_t byte = 0; byte < proof.tag.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      Proof p = proof;
      p.tag[byte] ^= static_cast<std::uint8_t>(1u << bit);
      EXPECT_FALSE(keys.vk(RelationKind::SoundGeoOnly).verify(pub, p));
    }
  }
}

TEST(Property, ProverIssuesExactlyWhenInsideRadius) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> jitter(-700, 700);
  const KeyPair kp = keygen(RelationKind::SoundGeoOnly, 5);
  const auto params = geo::make_params(kTokyo, geo::Meters(50.0));
  const auto pub = build_public_signals(RelationKind::SoundGeoOnly, params, std::nullopt,
                                        std::nullopt);
  int inside = 0;
  for (int i = 0; i < 10'000; ++i) {
    const geo::GeoPoint w{kTokyo.lat_udeg + jitter(rng), kTokyo.lon_udeg + jitter(rng)};
    const bool expect = geo::within_radius(w, params);
    EXPECT_EQ(eval_relation(RelationKind::SoundGeoOnly, pub, {w}), expect);
    if (expect) {
      ++inside;
      EXPECT_TRUE(kp.vk.verify(pub, kp.pk.prove(pub, {w})));
    } else {
      EXPECT_THROW(kp.pk.prove(pub, {w}), ProveRefused);
    }
  }
  EXPECT_GT(inside, 1'000);
  EXPECT_LT(inside, 9'000);
  // Audit coupling: every issued proof had a satisfied relation.
  for (const auto& e : kp.pk.audit_log()) EXPECT_EQ(e.issued, e.relation_held);
}

TEST(Property, PrototypeAcceptsAnyWitness) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> lat(-90'000'000, 90'000'000);
  std::uniform_int_distribution<std::int64_t> lon(-180'000'000, 180'000'000);
  const KeyPair kp = keygen(RelationKind::PrototypeBuggy, 5);
  const auto pub = build_public_signals(RelationKind::PrototypeBuggy,
                                        geo::make_params(kTokyo, geo::Meters(50.0)),
                                        std::nullopt, std::nullopt);
  for (int i = 0; i < 2'000; ++i) {
    const geo::GeoPoint w{lat(rng), lon(rng)};
    EXPECT_TRUE(kp.vk.verify(pub, kp.pk.prove(pub, {w, 1})));
  }
}

TEST(Property, ContextEncodingInjective) {
  // Small alphabet with digits so naive concatenation would collide often.
  std::mt19937_64 rng(11);
  const std::string alphabet = "0123|a";
  auto word = [&] {
    std::string s(rng() % 4, '\0');
    for (char& c : s) c = alphabet[rng() % alphabet.size()];
    return s;
  };
  std::map<std::string, ContextTuple> seen;
  std::set<FieldElement> digests;
  for (int i = 0; i < 20'000; ++i) {
    const ContextTuple t{word(), word(), rng() % 12};
    const std::string enc = encode_context(t);
    auto [it, inserted] = seen.emplace(enc, t);
    if (!inserted) {
      EXPECT_EQ(it->second, t) << "collision on " << enc;
    } else {
      digests.insert(context_digest(t));
    }
  }
  EXPECT_EQ(digests.size(), seen.size());
}

TEST(Property, LpEncodeInjectiveOverFieldLists) {
  std::mt19937_64 rng(12);
  std::map<std::string, std::vector<std::string>> seen;
  for (int i = 0; i < 20'000; ++i) {
    std::vector<std::string> fields(1 + rng() % 3);
    for (auto& f : fields) {
      f.assign(rng() % 5, '0');
      for (char& c : f) c = static_cast<char>('0' + rng() % 3);
    }
    auto [it, inserted] = seen.emplace(lp_encode(fields), fields);
    if (!inserted) {
      EXPECT_EQ(it->second, fields);
    }
  }
}

constexpr std::array<lab::ScenarioId, 5> kAttacks{lab::ScenarioId::B, lab::ScenarioId::C,
                                                  lab::ScenarioId::D, lab::ScenarioId::E,
                                                  lab::ScenarioId::F};
constexpr std::array<Strategy, 6> kSessionStrategies{
    Strategy::S2b, Strategy::S2c_default, Strategy::S2c_hardened,
    Strategy::S2d, Strategy::S3a,         Strategy::S3b};

TEST(Property, SessionStrategiesRejectAttacksWithoutFaults) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (lab::ScenarioId id : kAttacks) {
      for (Strategy s : kSessionStrategies) {
        const auto r = lab::run_scenario(id, s, NoncePolicy::PerRequest, {},
                                         CircuitProfile::NonceBound, seed);
        EXPECT_EQ(r.outcome, lab::Outcome::Reject)
            << to_string(id) << " " << to_string(s) << " seed " << seed;
      }
    }
  }
}

TEST(Property, HonestClaimsAlwaysAccepted) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (Strategy s : kAllStrategies) {
      for (auto policy : {NoncePolicy::PerRequest, NoncePolicy::EpochDerived}) {
        for (auto profile : {CircuitProfile::Generic, CircuitProfile::NonceBound}) {
          EXPECT_EQ(lab::run_scenario(lab::ScenarioId::A, s, policy, {}, profile, seed).outcome,
                    lab::Outcome::Accept);
        }
      }
    }
  }
}

FaultSet faults_from_mask(unsigned mask) {
  FaultSet f;
  f.mapping_failure = mask & 1u;
  f.nonce_reuse = mask & 2u;
  f.client_bypass = mask & 4u;
  f.omit_pub7_check = mask & 8u;
  return f;
}

TEST(Property, WeakeningFaultsAreMonotone) {
  for (lab::ScenarioId id : lab::kAllScenarios) {
    for (Strategy s : kAllStrategies) {
      for (auto policy : {NoncePolicy::PerRequest, NoncePolicy::EpochDerived}) {
        for (auto profile : {CircuitProfile::Generic, CircuitProfile::NonceBound}) {
          std::array<lab::Outcome, 16> out{};
          for (unsigned m = 0; m < 16; ++m) {
            out[m] = lab::run_scenario(id, s, policy, faults_from_mask(m), profile).outcome;
          }
          for (unsigned m = 0; m < 16; ++m) {
            for (unsigned bit = 1; bit < 16; bit <<= 1) {
              if (out[m] == lab::Outcome::Accept) {
                EXPECT_EQ(out[m | bit], lab::Outcome::Accept)
                    << to_string(id) << " " << to_string(s) << " mask " << m << "+" << bit;
              }
            }
          }
        }
      }
    }
  }
}

TEST(Property, LevelIIIVectorsDistinctPerDropUnderSharedNonce) {
  for (int k : {2, 3, 7, 16, 40}) EXPECT_TRUE(lab::shared_epoch_check(k)) << k;
}

TEST(Property, GameWinRatesStableAcrossSeeds) {
  FaultSet reuse;
  reuse.nonce_reuse = true;
  for (std::uint64_t seed : {1u, 2u, 3u, 77u}) {
    EXPECT_EQ(lab::context_binding_game(Strategy::S3b, 4, NoncePolicy::EpochDerived, reuse, 30,
                                        seed)
                  .wins,
              0);
    EXPECT_EQ(lab::context_binding_game(Strategy::S2b, 4, NoncePolicy::PerRequest, reuse, 30,
                                        seed)
                  .wins,
              30);
  }
}

}  // namespace
}  // namespace ctxbind
