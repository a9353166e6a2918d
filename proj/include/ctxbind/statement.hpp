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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxbind/codec.hpp"
#include "ctxbind/field.hpp"
#include "ctxbind/geo.hpp"

namespace ctxbind {

/// The four circuit flavours.
///
///   PrototypeBuggy  5 signals  (out, geo)          out is an unconstrained hint
///   SoundGeoOnly    5 signals  (out, geo)
///   LevelII         7 signals  (out, geo, epoch, N)
///   LevelIII        8 signals  (out, geo, C, epoch, N)
enum class RelationKind { PrototypeBuggy, SoundGeoOnly, LevelII, LevelIII };

inline constexpr std::array<RelationKind, 4> kAllRelations{
    RelationKind::PrototypeBuggy, RelationKind::SoundGeoOnly, RelationKind::LevelII,
    RelationKind::LevelIII};

std::string_view to_string(RelationKind kind);
std::size_t signal_count(RelationKind kind);
bool is_sound(RelationKind kind);
bool has_session_slots(RelationKind kind);  // epoch and N
bool has_context_slot(RelationKind kind);   // C

namespace slot {
inline constexpr std::size_t kOut = 0;
inline constexpr std::size_t kLatT = 1;
inline constexpr std::size_t kLonT = 2;
inline constexpr std::size_t kR2 = 3;
inline constexpr std::size_t kCos = 4;
}  // namespace slot

/// Index of the context digest, epoch and challenge digest for `kind`, if
/// the layout has them.
std::optional<std::size_t> context_slot(RelationKind kind);
std::optional<std::size_t> epoch_slot(RelationKind kind);
std::optional<std::size_t> challenge_slot(RelationKind kind);

/// Ordered public-signal vector in one of the four layouts.
class PublicSignals {
 public:
  /// Throws LayoutError when values.size() does not match the kind.
  static PublicSignals from_values(RelationKind kind, std::vector<FieldElement> values);

  RelationKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  std::span<const FieldElement> values() const { return values_; }
  const FieldElement& operator[](std::size_t i) const { return values_.at(i); }

  const FieldElement& out() const { return values_[slot::kOut]; }
  /// Decodes slots 1..4 back into geometry. Throws LayoutError if the
  /// values are not valid coordinates.
  geo::GeoParams geo_params() const;
  std::optional<FieldElement> context_digest() const;
  std::optional<FieldElement> epoch() const;
  std::optional<FieldElement> challenge_digest() const;

  /// Copy with slot `i` replaced.
  PublicSignals with_slot(std::size_t i, FieldElement v) const;

  /// JSON array of decimal strings in signal order.
  std::string to_json() const;
  /// Throws LayoutError / EncodingError on malformed input.
  static PublicSignals from_json(RelationKind kind, std::string_view json);

  friend bool operator==(const PublicSignals&, const PublicSignals&) = default;

 private:
  PublicSignals(RelationKind kind, std::vector<FieldElement> values)
      : kind_(kind), values_(std::move(values)) {}

  RelationKind kind_;
  std::vector<FieldElement> values_;
};

/// Slot indices where two equally sized vectors differ.
std::vector<std::size_t> differing_slots(const PublicSignals& a, const PublicSignals& b);

std::array<FieldElement, 4> encode_geo(const geo::GeoParams& params);

/// Builds the public signals for `kind`.
///
/// LevelII needs `ctx` (for its epoch) and `nonce_digest`; LevelIII needs
/// both and derives C = context_digest(ctx). The 5-signal kinds take
/// neither. Any mismatch throws LayoutError. `out` is fixed to 1.
PublicSignals build_public_signals(RelationKind kind, const geo::GeoParams& params,
                                   const std::optional<ContextTuple>& ctx,
                                   const std::optional<FieldElement>& nonce_digest);

/// Private witness: claimant coordinates. claimed_out only matters for the
/// prototype relation, whose `out` is an unconstrained prover hint.
struct Witness {
  geo::GeoPoint point;
  int claimed_out = 1;
};

/// Sound kinds: out == 1 and the witness lies within radius of pub.geo.
/// PrototypeBuggy: out == claimed_out, distance never enforced.
/// Throws LayoutError if pub.kind() != kind.
bool eval_relation(RelationKind kind, const PublicSignals& pub, const Witness& w);

}  // namespace ctxbind
