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

#include "ctxbind/server.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ctxbind/errors.hpp"

namespace ctxbind {

using nlohmann::json;

std::string_view to_string(NoncePolicy policy) {
  return policy == NoncePolicy::PerRequest ? "per-request" : "epoch-derived";
}

namespace {

constexpr std::array<StrategyInfo, 8> kInfo{{
    {"1", "Proof verification only", 0, BindingLevel::None},
    {"2a", "Client-side context check", 1, BindingLevel::OffCircuit},
    {"2b", "Server recomputation", 6, BindingLevel::OffCircuit},
    {"2c-default", "Server stored digest (naive)", 4, BindingLevel::OffCircuit},
    {"2c-hardened", "Server stored digest (hardened)", 4, BindingLevel::OffCircuit},
    {"2d", "Signed challenge token", 5, BindingLevel::OffCircuit},
    {"3a", "In-proof session nonce", 4, BindingLevel::SessionInProof},
    {"3b", "In-proof full context", 2, BindingLevel::ContextInProof},
}};

std::optional<std::uint64_t> as_epoch(const std::optional<FieldElement>& v) {
  if (!v) return std::nullopt;
  try {
    const auto e = v->to_signed();
    if (e < 0) return std::nullopt;
    return static_cast<std::uint64_t>(e);
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

}  // namespace

const StrategyInfo& info(Strategy s) { return kInfo[static_cast<std::size_t>(s)]; }

std::string_view to_string(Strategy s) { return info(s).label; }

std::optional<Strategy> parse_strategy(std::string_view label) {
  for (Strategy s : kAllStrategies) {
    if (info(s).label == label) return s;
  }
  return std::nullopt;
}

RelationKind relation_for(Strategy s, CircuitProfile profile) {
  switch (s) {
    case Strategy::S1:
    case Strategy::S2a: return RelationKind::SoundGeoOnly;
    case Strategy::S2b:
    case Strategy::S2c_default:
    case Strategy::S2d:
      return profile == CircuitProfile::NonceBound ? RelationKind::LevelII
                                                   : RelationKind::SoundGeoOnly;
    case Strategy::S3a: return RelationKind::LevelII;
    case Strategy::S2c_hardened:
    case Strategy::S3b: return RelationKind::LevelIII;
  }
  return RelationKind::SoundGeoOnly;
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::BadProof: return "bad_proof";
    case RejectReason::CtxMismatch: return "ctx_mismatch";
    case RejectReason::NonceUnknown: return "nonce_unknown";
    case RejectReason::StaleEpoch: return "stale_epoch";
    case RejectReason::TokenInvalid: return "token_invalid";
    case RejectReason::DigestMismatch: return "digest_mismatch";
  }
  return "?";
}

ServerState::ServerState(std::uint64_t seed, const KeyRing& keys, CircuitProfile profile)
    : seed_(seed), keys_(&keys), profile_(profile), rng_(seed) {
  const auto k = crypto::sha256("token-key:" + std::to_string(seed));
  token_key_ = std::string(crypto::as_view(k));
}

void ServerState::add_drop(Drop drop) {
  geo::validate(drop.geo.target);
  if (drops_.contains(drop.drop_id)) {
    throw std::invalid_argument("duplicate drop id: " + drop.drop_id);
  }
  std::string id = drop.drop_id;
  drops_.emplace(std::move(id), std::move(drop));
}

const Drop& ServerState::drop(std::string_view drop_id) const {
  auto it = drops_.find(drop_id);
  if (it == drops_.end()) throw UnknownDrop(std::string(drop_id));
  return it->second;
}

bool ServerState::has_drop(std::string_view drop_id) const { return drops_.contains(drop_id); }

Nonce ServerState::next_nonce(NoncePolicy policy) {
  if (policy == NoncePolicy::EpochDerived) {
    auto it = epoch_nonces_.find(epoch_);
    if (it == epoch_nonces_.end()) it = epoch_nonces_.emplace(epoch_, Nonce::random(rng_)).first;
    return it->second;
  }
  auto first = first_request_nonces_.find(epoch_);
  if (faults_.nonce_reuse && first != first_request_nonces_.end()) return first->second;
  Nonce nonce = Nonce::random(rng_);
  if (first == first_request_nonces_.end()) first_request_nonces_.emplace(epoch_, nonce);
  return nonce;
}

ChallengeBundle ServerState::issue_challenge(std::string_view drop_id, NoncePolicy policy) {
  const Drop& d = drop(drop_id);
  Nonce nonce = next_nonce(policy);
  const FieldElement n = challenge_digest(nonce);
  const FieldElement c = context_digest({d.drop_id, d.policy_version, epoch_});

  auto& entry = nonce_map_[n];
  entry.drops.insert(d.drop_id);
  entry.epoch = std::max(entry.epoch, epoch_);
  digest_store_.insert_or_assign(StoreKey{d.drop_id, epoch_, n},
                                 ChallengeRecord{nonce, n, c, d.drop_id, epoch_, epoch_});

  return ChallengeBundle{d.drop_id, d.geo, c, epoch_, nonce, n,
                         sign_token(d.drop_id, epoch_, nonce)};
}

void ServerState::advance_epoch() { ++epoch_; }

crypto::Digest ServerState::sign_token(std::string_view drop_id, std::uint64_t epoch,
                                       const Nonce& nonce) const {
  return crypto::hmac_sha256(token_key_,
                             lp_encode({std::string(drop_id), epoch_string(epoch), nonce.bytes()}));
}

bool ServerState::check_token(std::string_view drop_id, std::uint64_t epoch, const Nonce& nonce,
                              const crypto::Digest& token) const {
  return crypto::equal_tags(sign_token(drop_id, epoch, nonce), token);
}

bool ServerState::resolve(const FieldElement& n, std::string_view drop_id) const {
  auto it = nonce_map_.find(n);
  if (it == nonce_map_.end()) return false;
  if (faults_.mapping_failure) return true;
  return it->second.drops.contains(std::string(drop_id));
}

std::optional<std::uint64_t> ServerState::issued_epoch(const FieldElement& n) const {
  auto it = nonce_map_.find(n);
  if (it == nonce_map_.end()) return std::nullopt;
  return it->second.epoch;
}

const ChallengeRecord* ServerState::find_record(std::string_view drop_id, std::uint64_t epoch,
                                                const FieldElement& n) const {
  auto it = digest_store_.find(StoreKey{std::string(drop_id), epoch, n});
  return it == digest_store_.end() ? nullptr : &it->second;
}

namespace {

json geo_to_json(const geo::GeoParams& g) {
  return {{"lat_udeg", g.target.lat_udeg},
          {"lon_udeg", g.target.lon_udeg},
          {"r2_udeg2", g.r2_udeg2},
          {"cos_scaled", g.cos_scaled}};
}

geo::GeoParams geo_from_json(const json& j) {
  geo::GeoParams g;
  g.target.lat_udeg = j.at("lat_udeg").get<std::int64_t>();
  g.target.lon_udeg = j.at("lon_udeg").get<std::int64_t>();
  g.r2_udeg2 = j.at("r2_udeg2").get<std::int64_t>();
  g.cos_scaled = j.at("cos_scaled").get<std::int64_t>();
  return g;
}

}  // namespace

std::string ServerState::export_json() const {
  json j;
  j["seed"] = seed_;
  j["profile"] = profile_ == CircuitProfile::Generic ? "generic" : "nonce-bound";
  j["epoch"] = epoch_;
  std::ostringstream rng;
  rng << rng_;
  j["rng"] = rng.str();
  j["faults"] = {{"mapping_failure", faults_.mapping_failure},
                 {"nonce_reuse", faults_.nonce_reuse},
                 {"drift", faults_.drift ? json(std::string(to_string(*faults_.drift))) : json()},
                 {"client_bypass", faults_.client_bypass},
                 {"omit_pub7_check", faults_.omit_pub7_check}};
  j["drops"] = json::array();
  for (const auto& [id, d] : drops_) {
    j["drops"].push_back(
        {{"drop_id", d.drop_id}, {"policy_version", d.policy_version}, {"geo", geo_to_json(d.geo)}});
  }
  j["challenges"] = json::array();
  for (const auto& [key, rec] : digest_store_) {
    j["challenges"].push_back({{"drop_id", rec.drop_id},
                               {"epoch", rec.epoch},
                               {"issued_at_epoch", rec.issued_at_epoch},
                               {"nonce", rec.nonce.hex()},
                               {"c_digest", rec.c_digest.to_decimal()}});
  }
  j["epoch_nonces"] = json::object();
  for (const auto& [e, nonce] : epoch_nonces_) j["epoch_nonces"][std::to_string(e)] = nonce.hex();
  j["first_request_nonces"] = json::object();
  for (const auto& [e, nonce] : first_request_nonces_) {
    j["first_request_nonces"][std::to_string(e)] = nonce.hex();
  }
  return j.dump(2);
}

ServerState ServerState::import_json(std::string_view text, const KeyRing& keys) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw EncodingError(std::string("server snapshot: ") + e.what());
  }
  try {
    const auto profile = j.at("profile").get<std::string>() == "generic"
                             ? CircuitProfile::Generic
                             : CircuitProfile::NonceBound;
    ServerState s(j.at("seed").get<std::uint64_t>(), keys, profile);
    s.epoch_ = j.at("epoch").get<std::uint64_t>();
    std::istringstream rng(j.at("rng").get<std::string>());
    rng >> s.rng_;
    if (!rng) throw EncodingError("server snapshot: bad rng state");

    const json& f = j.at("faults");
    s.faults_.mapping_failure = f.at("mapping_failure").get<bool>();
    s.faults_.nonce_reuse = f.at("nonce_reuse").get<bool>();
    if (!f.at("drift").is_null()) s.faults_.drift = parse_drift(f.at("drift").get<std::string>());
    s.faults_.client_bypass = f.at("client_bypass").get<bool>();
    s.faults_.omit_pub7_check = f.at("omit_pub7_check").get<bool>();

    for (const auto& d : j.at("drops")) {
      s.add_drop(Drop{d.at("drop_id").get<std::string>(), geo_from_json(d.at("geo")),
                      d.at("policy_version").get<std::string>()});
    }
    for (const auto& c : j.at("challenges")) {
      Nonce nonce = Nonce::from_hex(c.at("nonce").get<std::string>());
      const FieldElement n = challenge_digest(nonce);
      ChallengeRecord rec{nonce,
                          n,
                          FieldElement::from_decimal(c.at("c_digest").get<std::string>()),
                          c.at("drop_id").get<std::string>(),
                          c.at("epoch").get<std::uint64_t>(),
                          c.at("issued_at_epoch").get<std::uint64_t>()};
      auto& entry = s.nonce_map_[n];
      entry.drops.insert(rec.drop_id);
      entry.epoch = std::max(entry.epoch, rec.epoch);
      s.digest_store_.insert_or_assign(StoreKey{rec.drop_id, rec.epoch, n}, std::move(rec));
    }
    for (const auto& [e, hex] : j.at("epoch_nonces").items()) {
      s.epoch_nonces_.emplace(std::stoull(e), Nonce::from_hex(hex.get<std::string>()));
    }
    for (const auto& [e, hex] : j.at("first_request_nonces").items()) {
      s.first_request_nonces_.emplace(std::stoull(e), Nonce::from_hex(hex.get<std::string>()));
    }
    return s;
  } catch (const json::exception& e) {
    throw EncodingError(std::string("server snapshot: ") + e.what());
  }
}

Verdict verify_claim(Strategy strategy, const ServerState& state, const Claim& claim) {
  using R = RejectReason;
  const RelationKind kind = relation_for(strategy, state.profile());
  if (!state.vk(kind).verify(claim.pub, claim.proof)) return Verdict::rejected(R::BadProof);
  if (strategy == Strategy::S1) return Verdict::accept();

  if (!state.has_drop(claim.claimed_drop_id)) return Verdict::rejected(R::CtxMismatch);
  const Drop& drop = state.drop(claim.claimed_drop_id);
  const FaultSet& faults = state.faults();
  const ChallengeBundle& aux = claim.aux;

  bool geo_ok = false;
  try {
    geo_ok = claim.pub.geo_params() == drop.geo;
  } catch (const LayoutError&) {
  }
  auto fresh = [&](std::uint64_t e) { return e >= state.current_epoch(); };
  // Session linkage: what the proof commits to if it can, else what aux says.
  const FieldElement n = claim.pub.challenge_digest().value_or(aux.n_digest);
  const std::optional<std::uint64_t> pub_epoch = as_epoch(claim.pub.epoch());

  switch (strategy) {
    case Strategy::S1: break;

    case Strategy::S2a:
      if (faults.client_bypass) return Verdict::accept();
      if (aux.drop_id != drop.drop_id || !geo_ok) return Verdict::rejected(R::CtxMismatch);
      if (!fresh(aux.epoch)) return Verdict::rejected(R::StaleEpoch);
      return Verdict::accept();

    case Strategy::S2b: {
      if (!geo_ok) return Verdict::rejected(R::CtxMismatch);
      if (!fresh(aux.epoch)) return Verdict::rejected(R::StaleEpoch);
      if (!state.resolve(n, drop.drop_id)) return Verdict::rejected(R::NonceUnknown);
      const ContextTuple ctx{drop.drop_id, drop.policy_version, aux.epoch};
      const ContextEncoding enc = encode_for(faults.drift, ctx, aux.nonce);
      if (hash_to_field(enc.context) != aux.c_digest || hash_to_field(enc.nonce) != aux.n_digest) {
        return Verdict::rejected(R::DigestMismatch);
      }
      return Verdict::accept();
    }

    case Strategy::S2c_default:
    case Strategy::S2c_hardened: {
      if (!geo_ok) return Verdict::rejected(R::CtxMismatch);
      if (!state.resolve(n, drop.drop_id)) return Verdict::rejected(R::NonceUnknown);
      const auto issued = state.issued_epoch(n);
      if (!issued || !fresh(*issued)) return Verdict::rejected(R::StaleEpoch);
      if (strategy == Strategy::S2c_default || faults.omit_pub7_check) return Verdict::accept();
      const ChallengeRecord* rec =
          pub_epoch ? state.find_record(drop.drop_id, *pub_epoch, n) : nullptr;
      if (!rec || claim.pub.challenge_digest() != rec->n_digest ||
          claim.pub.context_digest() != rec->c_digest) {
        return Verdict::rejected(R::DigestMismatch);
      }
      return Verdict::accept();
    }

    case Strategy::S2d:
      if (!geo_ok) return Verdict::rejected(R::CtxMismatch);
      if (!state.resolve(n, drop.drop_id)) return Verdict::rejected(R::NonceUnknown);
      if (!state.check_token(drop.drop_id, aux.epoch, aux.nonce, aux.token)) {
        return Verdict::rejected(R::TokenInvalid);
      }
      if (!fresh(aux.epoch)) return Verdict::rejected(R::StaleEpoch);
      return Verdict::accept();

    case Strategy::S3a:
      if (!geo_ok) return Verdict::rejected(R::CtxMismatch);
      if (!pub_epoch || !fresh(*pub_epoch)) return Verdict::rejected(R::StaleEpoch);
      if (!state.resolve(n, drop.drop_id)) return Verdict::rejected(R::NonceUnknown);
      return Verdict::accept();

    case Strategy::S3b: {
      const ChallengeRecord* rec =
          pub_epoch ? state.find_record(drop.drop_id, *pub_epoch, n) : nullptr;
      if (!rec) return Verdict::rejected(R::NonceUnknown);
      if (claim.pub.context_digest() != rec->c_digest || !geo_ok) {
        return Verdict::rejected(R::CtxMismatch);
      }
      if (!fresh(*pub_epoch)) return Verdict::rejected(R::StaleEpoch);
      return Verdict::accept();
    }
  }
  return Verdict::rejected(R::BadProof);
}

}  // namespace ctxbind
