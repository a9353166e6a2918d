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

#include "ctxbind/statement.hpp"

#include <json.hpp>

#include "ctxbind/errors.hpp"

namespace ctxbind {

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::PrototypeBuggy: return "prototype-5";
    case RelationKind::SoundGeoOnly: return "sound-geo-5";
    case RelationKind::LevelII: return "level-ii-7";
    case RelationKind::LevelIII: return "level-iii-8";
  }
  return "?";
}

std::size_t signal_count(RelationKind kind) {
  switch (kind) {
    case RelationKind::PrototypeBuggy:
    case RelationKind::SoundGeoOnly: return 5;
    case RelationKind::LevelII: return 7;
    case RelationKind::LevelIII: return 8;
  }
  return 0;
}

bool is_sound(RelationKind kind) { return kind != RelationKind::PrototypeBuggy; }

bool has_session_slots(RelationKind kind) {
  return kind == RelationKind::LevelII || kind == RelationKind::LevelIII;
}

bool has_context_slot(RelationKind kind) { return kind == RelationKind::LevelIII; }

std::optional<std::size_t> context_slot(RelationKind kind) {
  if (kind == RelationKind::LevelIII) return 5;
  return std::nullopt;
}

std::optional<std::size_t> epoch_slot(RelationKind kind) {
  if (kind == RelationKind::LevelII) return 5;
  if (kind == RelationKind::LevelIII) return 6;
  return std::nullopt;
}

std::optional<std::size_t> challenge_slot(RelationKind kind) {
  if (kind == RelationKind::LevelII) return 6;
  if (kind == RelationKind::LevelIII) return 7;
  return std::nullopt;
}

PublicSignals PublicSignals::from_values(RelationKind kind, std::vector<FieldElement> values) {
  if (values.size() != signal_count(kind)) {
    throw LayoutError(std::string(to_string(kind)) + " expects " +
                      std::to_string(signal_count(kind)) + " signals, got " +
                      std::to_string(values.size()));
  }
  return PublicSignals(kind, std::move(values));
}

geo::GeoParams PublicSignals::geo_params() const {
  geo::GeoParams p;
  try {
    p.target.lat_udeg = values_[slot::kLatT].to_signed();
    p.target.lon_udeg = values_[slot::kLonT].to_signed();
    p.r2_udeg2 = values_[slot::kR2].to_signed();
    p.cos_scaled = values_[slot::kCos].to_signed();
  } catch (const std::out_of_range&) {
    throw LayoutError("geo slots are not embedded integers");
  }
  try {
    geo::validate(p.target);
  } catch (const DomainError& e) {
    throw LayoutError(e.what());
  }
  if (p.r2_udeg2 < 0 || p.cos_scaled < 0 || p.cos_scaled > geo::kMicro) {
    throw LayoutError("geo slots out of range");
  }
  return p;
}

namespace {
std::optional<FieldElement> at(const std::vector<FieldElement>& v, std::optional<std::size_t> i) {
  if (!i) return std::nullopt;
  return v[*i];
}
}  // namespace

std::optional<FieldElement> PublicSignals::context_digest() const {
  return at(values_, context_slot(kind_));
}

std::optional<FieldElement> PublicSignals::epoch() const { return at(values_, epoch_slot(kind_)); }

std::optional<FieldElement> PublicSignals::challenge_digest() const {
  return at(values_, challenge_slot(kind_));
}

PublicSignals PublicSignals::with_slot(std::size_t i, FieldElement v) const {
  PublicSignals copy = *this;
  copy.values_.at(i) = std::move(v);
  return copy;
}

std::string PublicSignals::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values_) arr.push_back(v.to_decimal());
  return arr.dump();
}

PublicSignals PublicSignals::from_json(RelationKind kind, std::string_view text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw EncodingError(std::string("public signals: ") + e.what());
  }
  if (!arr.is_array()) throw EncodingError("public signals must be a JSON array");
  std::vector<FieldElement> values;
  for (const auto& item : arr) {
    if (!item.is_string()) throw EncodingError("public signals must be decimal strings");
    values.push_back(FieldElement::from_decimal(item.get<std::string>()));
  }
  return from_values(kind, std::move(values));
}

std::vector<std::size_t> differing_slots(const PublicSignals& a, const PublicSignals& b) {
  if (a.size() != b.size()) throw LayoutError("cannot diff vectors of different length");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) out.push_back(i);
  }
  return out;
}

std::array<FieldElement, 4> encode_geo(const geo::GeoParams& params) {
  return {FieldElement::from_signed(params.target.lat_udeg),
          FieldElement::from_signed(params.target.lon_udeg),
          FieldElement::from_signed(params.r2_udeg2),
          FieldElement::from_signed(params.cos_scaled)};
}

PublicSignals build_public_signals(RelationKind kind, const geo::GeoParams& params,
                                   const std::optional<ContextTuple>& ctx,
                                   const std::optional<FieldElement>& nonce_digest) {
  const bool session = has_session_slots(kind);
  if (session && (!ctx || !nonce_digest)) {
    throw LayoutError(std::string(to_string(kind)) + " requires context and nonce digest");
  }
  if (!session && (ctx || nonce_digest)) {
    throw LayoutError(std::string(to_string(kind)) + " takes no context");
  }

  std::vector<FieldElement> values;
  values.reserve(signal_count(kind));
  values.emplace_back(FieldElement::Int(1));
  for (auto& g : encode_geo(params)) values.push_back(std::move(g));
  if (has_context_slot(kind)) values.push_back(context_digest(*ctx));
  if (session) {
    values.emplace_back(FieldElement::Int(ctx->epoch));
    values.push_back(*nonce_digest);
  }
  return PublicSignals::from_values(kind, std::move(values));
}

bool eval_relation(RelationKind kind, const PublicSignals& pub, const Witness& w) {
  if (pub.kind() != kind) throw LayoutError("public signals do not match relation kind");
  if (kind == RelationKind::PrototypeBuggy) {
    // The hint `out <-- (r2 >= dist2) ? 1 : 0` is unconstrained: any
    // assignment the prover picks is satisfiable.
    return pub.out() == FieldElement(FieldElement::Int(w.claimed_out < 0 ? 0 : w.claimed_out));
  }
  if (pub.out() != FieldElement(FieldElement::Int(1))) return false;
  try {
    geo::validate(w.point);
  } catch (const DomainError&) {
    return false;
  }
  return geo::within_radius(w.point, pub.geo_params());
}

}  // namespace ctxbind
