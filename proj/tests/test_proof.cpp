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

#include "ctxbind/proof.hpp"

#include <gtest/gtest.h>

#include "ctxbind/errors.hpp"

namespace ctxbind {
namespace {

const geo::GeoPoint kTokyo{35'660'000, 139'700'000};

PublicSignals level3() {
  return build_public_signals(RelationKind::LevelIII, geo::make_params(kTokyo, geo::Meters(50.0)),
                              ContextTuple{"drop-42", "2", 7},
                              challenge_digest(Nonce("n")));
}

TEST(Proof, Completeness) {
  const KeyPair kp = keygen(RelationKind::LevelIII, 1);
  const auto pub = level3();
  const Proof p = kp.pk.prove(pub, {kTokyo});
  EXPECT_TRUE(kp.vk.verify(pub, p));
  EXPECT_TRUE(kp.vk.verify(pub, p));  // replayable
}

TEST(Proof, RefusesUnsatisfiedRelation) {
  const KeyPair kp = keygen(RelationKind::LevelIII, 1);
  const auto far = geo::offset_point(kTokyo, geo::Bearing::East, geo::Meters(52.0));
  EXPECT_THROW(kp.pk.prove(level3(), {far}), ProveRefused);
}

TEST(Proof, RefusesKindMismatch) {
  const KeyPair kp = keygen(RelationKind::LevelII, 1);
  EXPECT_THROW(kp.pk.prove(level3(), {kTokyo}), ProveRefused);
}

TEST(Proof, PrototypeProvesBeyondRadius) {
  const KeyPair kp = keygen(RelationKind::PrototypeBuggy, 1);
  const auto pub = build_public_signals(RelationKind::PrototypeBuggy,
                                        geo::make_params(kTokyo, geo::Meters(50.0)), std::nullopt,
                                        std::nullopt);
  const auto far = geo::offset_point(kTokyo, geo::Bearing::East, geo::Meters(52.0));
  EXPECT_TRUE(kp.vk.verify(pub, kp.pk.prove(pub, {far, 1})));
}

TEST(Proof, MutatedSignalFails) {
  const KeyPair kp = keygen(RelationKind::LevelIII, 1);
  const auto pub = level3();
  const Proof p = kp.pk.prove(pub, {kTokyo});
  for (std::size_t i = 0; i < pub.size(); ++i) {
    EXPECT_FALSE(kp.vk.verify(pub.with_slot(i, hash_to_field("mutant")), p)) << i;
  }
}

TEST(Proof, KeySeparation) {
  const KeyPair a = keygen(RelationKind::LevelIII, 1);
  const KeyPair b = keygen(RelationKind::LevelIII, 2);
  const auto pub = level3();
  EXPECT_FALSE(b.vk.verify(pub, a.pk.prove(pub, {kTokyo})));
  EXPECT_NE(a.vk.key_id(), b.vk.key_id());
}

TEST(Proof, DeterministicUnderSeed) {
  const auto pub = level3();
  const Proof p1 = keygen(RelationKind::LevelIII, 9).pk.prove(pub, {kTokyo});
  const Proof p2 = keygen(RelationKind::LevelIII, 9).pk.prove(pub, {kTokyo});
  EXPECT_EQ(p1, p2);
  EXPECT_TRUE(keygen(RelationKind::LevelIII, 9).vk.verify(pub, p1));
}

TEST(Proof, VerifyRejectsWrongKindWithoutThrowing) {
  const KeyPair kp = keygen(RelationKind::LevelII, 1);
  EXPECT_FALSE(kp.vk.verify(level3(), Proof{}));
}

TEST(Proof, HexSerialization) {
  const KeyPair kp = keygen(RelationKind::LevelIII, 1);
  const Proof p = kp.pk.prove(level3(), {kTokyo});
  const std::string hex = p.to_hex();
  EXPECT_EQ(hex.size(), 64u);
  EXPECT_EQ(Proof::from_hex(hex), p);
  EXPECT_THROW(Proof::from_hex(hex.substr(2)), EncodingError);
  EXPECT_THROW(Proof::from_hex(std::string(64, 'g')), EncodingError);
}

TEST(Proof, AuditLogRecordsEveryCall) {
  const KeyPair kp = keygen(RelationKind::LevelIII, 3);
  const auto far = geo::offset_point(kTokyo, geo::Bearing::East, geo::Meters(60.0));
  kp.pk.prove(level3(), {kTokyo});
  EXPECT_THROW(kp.pk.prove(level3(), {far}), ProveRefused);
  const auto log = kp.pk.audit_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_TRUE(log[0].issued && log[0].relation_held);
  EXPECT_FALSE(log[1].issued || log[1].relation_held);
  EXPECT_EQ(log[1].witness, far);
}

TEST(KeyRing, OnePairPerKind) {
  const KeyRing ring(5);
  for (auto k : kAllRelations) EXPECT_EQ(ring.vk(k).kind(), k);
  EXPECT_EQ(ring.vk(RelationKind::LevelIII).key_id(),
            keygen(RelationKind::LevelIII, 5).vk.key_id());
}

}  // namespace
}  // namespace ctxbind
