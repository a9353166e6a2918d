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

#include <algorithm>
#include <mutex>

#include "ctxbind/crypto.hpp"
#include "ctxbind/errors.hpp"

namespace ctxbind {

namespace detail {
struct KeyMaterial {
  RelationKind kind;
  std::string key_id;
  std::string secret;
  mutable std::mutex log_mu;
  mutable std::vector<AuditEntry> log;

  void append(AuditEntry e) const {
    std::lock_guard lock(log_mu);
    log.push_back(std::move(e));
  }
};
}  // namespace detail

namespace {

std::string tag_message(const detail::KeyMaterial& m, const PublicSignals& pub) {
  return lp_encode({m.key_id, std::string(to_string(pub.kind())), pub.to_json()});
}

Proof compute_tag(const detail::KeyMaterial& m, const PublicSignals& pub) {
  Proof p;
  p.tag = crypto::hmac_sha256(m.secret, tag_message(m, pub));
  return p;
}

}  // namespace

std::string Proof::to_hex() const { return crypto::to_hex(tag); }

Proof Proof::from_hex(std::string_view hex) {
  if (hex.size() != 64) throw EncodingError("proof must be 64 hex characters");
  const std::string bytes = crypto::from_hex(hex);
  Proof p;
  std::copy(bytes.begin(), bytes.end(), p.tag.begin());
  return p;
}

RelationKind VerifyingKey::kind() const { return m_->kind; }
const std::string& VerifyingKey::key_id() const { return m_->key_id; }

bool VerifyingKey::verify(const PublicSignals& pub, const Proof& proof) const noexcept {
  try {
    if (pub.kind() != m_->kind) return false;
    const Proof expected = compute_tag(*m_, pub);
    return crypto::equal_tags(expected.tag, proof.tag);
  } catch (...) {
    return false;
  }
}

RelationKind ProvingKey::kind() const { return m_->kind; }

Proof ProvingKey::prove(const PublicSignals& pub, const Witness& witness) const {
  AuditEntry entry{pub.to_json(), witness.point, false, false};
  if (pub.kind() != m_->kind) {
    m_->append(entry);
    throw ProveRefused("public signals do not match proving key");
  }
  entry.relation_held = eval_relation(m_->kind, pub, witness);
  if (!entry.relation_held) {
    m_->append(entry);
    throw ProveRefused("relation not satisfied");
  }
  entry.issued = true;
  m_->append(entry);
  return compute_tag(*m_, pub);
}

std::vector<AuditEntry> ProvingKey::audit_log() const {
  std::lock_guard lock(m_->log_mu);
  return m_->log;
}

KeyPair keygen(RelationKind kind, std::uint64_t seed) {
  auto m = std::make_shared<detail::KeyMaterial>();
  m->kind = kind;
  const std::string label = std::string(to_string(kind)) + ":" + std::to_string(seed);
  m->key_id = crypto::to_hex(crypto::sha256("key-id:" + label)).substr(0, 16);
  const auto secret = crypto::sha256("key-secret:" + label);
  m->secret = std::string(crypto::as_view(secret));
  std::shared_ptr<const detail::KeyMaterial> shared = std::move(m);
  return KeyPair{ProvingKey(shared), VerifyingKey(shared)};
}

KeyRing::KeyRing(std::uint64_t seed) {
  for (std::size_t i = 0; i < kAllRelations.size(); ++i) {
    pairs_[i] = std::make_unique<KeyPair>(keygen(kAllRelations[i], seed));
  }
}

const KeyPair& KeyRing::operator[](RelationKind kind) const {
  return *pairs_[static_cast<std::size_t>(kind)];
}

}  // namespace ctxbind
