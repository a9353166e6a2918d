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

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ctxbind/statement.hpp"

// Idealized proof system.
//
// A proof is a MAC tag over (key id, relation kind, public signals). The
// proving oracle only issues a tag when the relation holds for the supplied
// witness, which models knowledge soundness; verification checks the tag in
// constant time and never sees the witness, which models zero knowledge.
// An adversary without a ProvingKey handle cannot produce a tag that
// verifies.
namespace ctxbind {

struct Proof {
  std::array<std::uint8_t, 32> tag{};

  std::string to_hex() const;
  /// Throws EncodingError unless `hex` is exactly 64 hex characters.
  static Proof from_hex(std::string_view hex);

  friend bool operator==(const Proof&, const Proof&) = default;
};

namespace detail {
struct KeyMaterial;
}

struct KeyPair;

/// One call to the proving oracle.
struct AuditEntry {
  std::string pub_json;
  geo::GeoPoint witness;
  bool relation_held = false;
  bool issued = false;
};

class VerifyingKey {
 public:
  RelationKind kind() const;
  const std::string& key_id() const;
  /// False for any tag not issued by the matching ProvingKey for `pub`,
  /// including a kind mismatch.
  bool verify(const PublicSignals& pub, const Proof& proof) const noexcept;

 private:
  friend KeyPair keygen(RelationKind, std::uint64_t);
  explicit VerifyingKey(std::shared_ptr<const detail::KeyMaterial> m) : m_(std::move(m)) {}
  std::shared_ptr<const detail::KeyMaterial> m_;
};

class ProvingKey {
 public:
  RelationKind kind() const;
  /// Throws ProveRefused when pub has the wrong kind or the relation does
  /// not hold for `witness`.
  Proof prove(const PublicSignals& pub, const Witness& witness) const;
  /// Every prove() call made through this key, in order.
  std::vector<AuditEntry> audit_log() const;

 private:
  friend KeyPair keygen(RelationKind, std::uint64_t);
  explicit ProvingKey(std::shared_ptr<const detail::KeyMaterial> m) : m_(std::move(m)) {}
  std::shared_ptr<const detail::KeyMaterial> m_;
};

struct KeyPair {
  ProvingKey pk;
  VerifyingKey vk;
};

/// Deterministic in (kind, seed).
KeyPair keygen(RelationKind kind, std::uint64_t seed);

/// One key pair per relation kind.
class KeyRing {
 public:
  explicit KeyRing(std::uint64_t seed);

  const KeyPair& operator[](RelationKind kind) const;
  const VerifyingKey& vk(RelationKind kind) const { return (*this)[kind].vk; }
  const ProvingKey& pk(RelationKind kind) const { return (*this)[kind].pk; }

 private:
  std::array<std::unique_ptr<KeyPair>, kAllRelations.size()> pairs_;
};

}  // namespace ctxbind
