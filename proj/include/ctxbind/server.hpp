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
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

#include "ctxbind/codec.hpp"
#include "ctxbind/crypto.hpp"
#include "ctxbind/field.hpp"
#include "ctxbind/geo.hpp"
#include "ctxbind/proof.hpp"
#include "ctxbind/statement.hpp"

namespace ctxbind {

struct Drop {
  std::string drop_id;
  geo::GeoParams geo;
  std::string policy_version;
};

enum class NoncePolicy { PerRequest, EpochDerived };
std::string_view to_string(NoncePolicy policy);

/// Operational faults. All but `drift` only ever weaken a verifier.
struct FaultSet {
  bool mapping_failure = false;  // nonce-to-drop resolution fails open
  bool nonce_reuse = false;      // per-request issuance repeats the epoch's first nonce
  std::optional<DriftId> drift;  // recomputing verifier uses a drifted encoder
  bool client_bypass = false;    // 2a client-side check forced to "matched"
  bool omit_pub7_check = false;  // 2c-hardened skips its stored-digest comparison

  bool any() const {
    return mapping_failure || nonce_reuse || drift || client_bypass || omit_pub7_check;
  }
};

/// What the server remembers about one issued challenge.
struct ChallengeRecord {
  Nonce nonce;
  FieldElement n_digest;
  FieldElement c_digest;
  std::string drop_id;
  std::uint64_t epoch = 0;
  std::uint64_t issued_at_epoch = 0;
};

/// What the client receives; also what it later returns as the claim's aux.
struct ChallengeBundle {
  std::string drop_id;
  geo::GeoParams geo;
  FieldElement c_digest;
  std::uint64_t epoch = 0;
  Nonce nonce;
  FieldElement n_digest;
  crypto::Digest token{};  // 2d signature over (drop_id, epoch, nonce)
};

enum class Strategy { S1, S2a, S2b, S2c_default, S2c_hardened, S2d, S3a, S3b };

inline constexpr std::array<Strategy, 8> kAllStrategies{
    Strategy::S1,          Strategy::S2a, Strategy::S2b, Strategy::S2c_default,
    Strategy::S2c_hardened, Strategy::S2d, Strategy::S3a, Strategy::S3b};

enum class BindingLevel { None, OffCircuit, SessionInProof, ContextInProof };

struct StrategyInfo {
  std::string_view label;  // "2c-hardened"
  std::string_view name;   // "Server stored digest (hardened)"
  int op_assumption_count;
  BindingLevel binding;
};

const StrategyInfo& info(Strategy s);
std::string_view to_string(Strategy s);
/// Accepts labels such as "1", "2a", "2c-default", "3b".
std::optional<Strategy> parse_strategy(std::string_view label);

/// Which circuit the off-circuit strategies 1..2d run on.
///
/// Generic: a geo-only circuit; the server's view of the session comes
/// from aux alone. NonceBound: the session strategies 2b, 2c-default and 2d
/// use the 7-signal circuit, so the map resolves the N the proof commits
/// to. 2c-hardened and 3b always use 8 signals, 3a always 7.
enum class CircuitProfile { Generic, NonceBound };

RelationKind relation_for(Strategy s, CircuitProfile profile);

struct Claim {
  std::string claimed_drop_id;
  PublicSignals pub;
  Proof proof;
  ChallengeBundle aux;
};

enum class RejectReason {
  BadProof,
  CtxMismatch,
  NonceUnknown,
  StaleEpoch,
  TokenInvalid,
  DigestMismatch
};
std::string_view to_string(RejectReason r);

struct Verdict {
  std::optional<RejectReason> reject;

  static Verdict accept() { return {}; }
  static Verdict rejected(RejectReason r) { return {r}; }
  bool accepted() const { return !reject.has_value(); }
};

class ServerState {
 public:
  ServerState(std::uint64_t seed, const KeyRing& keys,
              CircuitProfile profile = CircuitProfile::Generic);

  /// Throws std::invalid_argument if the id is already taken.
  void add_drop(Drop drop);
  /// Throws UnknownDrop.
  const Drop& drop(std::string_view drop_id) const;
  bool has_drop(std::string_view drop_id) const;

  /// Throws UnknownDrop.
  ChallengeBundle issue_challenge(std::string_view drop_id, NoncePolicy policy);
  void advance_epoch();
  std::uint64_t current_epoch() const { return epoch_; }

  crypto::Digest sign_token(std::string_view drop_id, std::uint64_t epoch,
                            const Nonce& nonce) const;
  bool check_token(std::string_view drop_id, std::uint64_t epoch, const Nonce& nonce,
                   const crypto::Digest& token) const;

  /// True iff challenge digest `n` maps to `drop_id`. Fails open (any
  /// issued n resolves) under mapping_failure.
  bool resolve(const FieldElement& n, std::string_view drop_id) const;
  /// Epoch at which `n` was most recently issued.
  std::optional<std::uint64_t> issued_epoch(const FieldElement& n) const;
  const ChallengeRecord* find_record(std::string_view drop_id, std::uint64_t epoch,
                                     const FieldElement& n) const;

  std::size_t digest_store_size() const { return digest_store_.size(); }
  std::size_t nonce_map_size() const { return nonce_map_.size(); }

  FaultSet& faults() { return faults_; }
  const FaultSet& faults() const { return faults_; }
  CircuitProfile profile() const { return profile_; }
  const VerifyingKey& vk(RelationKind kind) const { return keys_->vk(kind); }

  /// Drops, epoch, issued challenges, faults and RNG state. Keys are not
  /// exported; import requires the same KeyRing and seed.
  std::string export_json() const;
  static ServerState import_json(std::string_view json, const KeyRing& keys);

 private:
  struct NonceEntry {
    std::set<std::string> drops;
    std::uint64_t epoch = 0;
  };
  using StoreKey = std::tuple<std::string, std::uint64_t, FieldElement>;

  Nonce next_nonce(NoncePolicy policy);

  std::uint64_t seed_;
  const KeyRing* keys_;
  CircuitProfile profile_;
  std::string token_key_;
  std::mt19937_64 rng_;
  std::uint64_t epoch_ = 1;
  FaultSet faults_;
  std::map<std::string, Drop, std::less<>> drops_;
  std::map<FieldElement, NonceEntry> nonce_map_;
  std::map<StoreKey, ChallengeRecord> digest_store_;
  std::map<std::uint64_t, Nonce> epoch_nonces_;
  std::map<std::uint64_t, Nonce> first_request_nonces_;
};

/// Acceptance predicate of `strategy` over `claim`. Never throws on
/// adversarial input; malformed claims are rejected with a reason.
Verdict verify_claim(Strategy strategy, const ServerState& state, const Claim& claim);

}  // namespace ctxbind
