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
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "ctxbind/field.hpp"

// Length-prefixed canonical encoding and hash-to-field for context and
// challenge digests. Byte strings are std::string.
namespace ctxbind {

inline constexpr std::size_t kMaxFieldBytes = 9'999;
inline constexpr std::size_t kDefaultNonceBytes = 16;

/// Application context of a claim: which drop, which policy, which epoch.
struct ContextTuple {
  std::string drop_id;
  std::string policy_version;
  std::uint64_t epoch = 0;

  friend bool operator==(const ContextTuple&, const ContextTuple&) = default;
};

/// Server-issued session nonce; 1..9999 raw bytes.
class Nonce {
 public:
  /// Throws EncodingError if the length is outside [1, 9999].
  explicit Nonce(std::string bytes);

  static Nonce random(std::mt19937_64& rng, std::size_t length = kDefaultNonceBytes);

  const std::string& bytes() const { return bytes_; }
  std::string hex() const;
  static Nonce from_hex(std::string_view hex);

  friend bool operator==(const Nonce&, const Nonce&) = default;

 private:
  std::string bytes_;
};

/// Four-digit zero-padded decimal byte length, then the field, per field.
/// Throws EncodingError for a field of 10'000 bytes or more.
std::string lp_encode(std::span<const std::string> fields);
std::string lp_encode(std::initializer_list<std::string> fields);

/// SHA-256(data) read as a big-endian integer, reduced mod p.
FieldElement hash_to_field(std::string_view data);

/// Minimal decimal rendering ("0" for zero).
std::string epoch_string(std::uint64_t epoch);

std::string encode_context(const ContextTuple& ctx);
FieldElement context_digest(const ContextTuple& ctx);
FieldElement challenge_digest(const Nonce& nonce);

/// Maintenance-induced encoder desynchronization.
enum class DriftId { D1, D2, D3, D4, D5 };

inline constexpr std::array<DriftId, 5> kAllDrifts{DriftId::D1, DriftId::D2, DriftId::D3,
                                                   DriftId::D4, DriftId::D5};

std::string_view to_string(DriftId id);
std::string_view describe(DriftId id);
/// Throws std::invalid_argument for anything other than "D1".."D5".
DriftId parse_drift(std::string_view text);

/// The byte strings a verifier hashes to recompute C and N.
struct ContextEncoding {
  std::string context;
  std::string nonce;

  friend bool operator==(const ContextEncoding&, const ContextEncoding&) = default;
};

ContextEncoding canonical_encoding(const ContextTuple& ctx, const Nonce& nonce);

/// What a desynchronized recomputing verifier would hash instead:
///   D1 separator format "drop|pv|epoch", D2 field order (pv, drop, epoch),
///   D3 epoch + 1, D4 policy version prefixed "v", D5 nonce hex-rendered.
ContextEncoding drift_encode(DriftId variant, const ContextTuple& ctx, const Nonce& nonce);

/// canonical_encoding when no drift is configured.
ContextEncoding encode_for(const std::optional<DriftId>& drift, const ContextTuple& ctx,
                           const Nonce& nonce);

}  // namespace ctxbind
