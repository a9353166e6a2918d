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

#include "ctxbind/codec.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

#include "ctxbind/crypto.hpp"
#include "ctxbind/errors.hpp"

namespace ctxbind {

Nonce::Nonce(std::string bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty() || bytes_.size() > kMaxFieldBytes) {
    throw EncodingError("nonce length must be in [1, 9999]");
  }
}

Nonce Nonce::random(std::mt19937_64& rng, std::size_t length) {
  std::string bytes(length, '\0');
  std::uniform_int_distribution<int> byte(0, 255);
  for (char& c : bytes) c = static_cast<char>(byte(rng));
  return Nonce(std::move(bytes));
}

std::string Nonce::hex() const { return crypto::to_hex(bytes_); }

Nonce Nonce::from_hex(std::string_view hex) { return Nonce(crypto::from_hex(hex)); }

std::string lp_encode(std::span<const std::string> fields) {
  std::string out;
  for (const auto& f : fields) {
    if (f.size() > kMaxFieldBytes) throw EncodingError("field exceeds 9999 bytes");
    char prefix[5];
    std::snprintf(prefix, sizeof prefix, "%04zu", f.size());
    out.append(prefix, 4);
    out.append(f);
  }
  return out;
}

std::string lp_encode(std::initializer_list<std::string> fields) {
  return lp_encode(std::span<const std::string>(fields.begin(), fields.size()));
}

FieldElement hash_to_field(std::string_view data) {
  const auto digest = crypto::sha256(data);
  return FieldElement::from_bytes_be(digest);
}

std::string epoch_string(std::uint64_t epoch) { return std::to_string(epoch); }

std::string encode_context(const ContextTuple& ctx) {
  return lp_encode({ctx.drop_id, ctx.policy_version, epoch_string(ctx.epoch)});
}

FieldElement context_digest(const ContextTuple& ctx) {
  return hash_to_field(encode_context(ctx));
}

FieldElement challenge_digest(const Nonce& nonce) { return hash_to_field(nonce.bytes()); }

std::string_view to_string(DriftId id) {
  switch (id) {
    case DriftId::D1: return "D1";
    case DriftId::D2: return "D2";
    case DriftId::D3: return "D3";
    case DriftId::D4: return "D4";
    case DriftId::D5: return "D5";
  }
  return "?";
}

std::string_view describe(DriftId id) {
  switch (id) {
    case DriftId::D1: return "Encoding format";
    case DriftId::D2: return "Field reorder";
    case DriftId::D3: return "Epoch off-by-one";
    case DriftId::D4: return "Version format";
    case DriftId::D5: return "Nonce encoding";
  }
  return "?";
}

DriftId parse_drift(std::string_view text) {
  for (DriftId id : kAllDrifts) {
    if (to_string(id) == text) return id;
  }
  throw std::invalid_argument("unknown drift variant: " + std::string(text));
}

ContextEncoding canonical_encoding(const ContextTuple& ctx, const Nonce& nonce) {
  return {encode_context(ctx), nonce.bytes()};
}

ContextEncoding drift_encode(DriftId variant, const ContextTuple& ctx, const Nonce& nonce) {
  ContextEncoding enc = canonical_encoding(ctx, nonce);
  switch (variant) {
    case DriftId::D1:
      enc.context = ctx.drop_id + "|" + ctx.policy_version + "|" + epoch_string(ctx.epoch);
      break;
    case DriftId::D2:
      enc.context = lp_encode({ctx.policy_version, ctx.drop_id, epoch_string(ctx.epoch)});
      break;
    case DriftId::D3:
      enc.context = lp_encode({ctx.drop_id, ctx.policy_version, epoch_string(ctx.epoch + 1)});
      break;
    case DriftId::D4:
      enc.context = lp_encode({ctx.drop_id, "v" + ctx.policy_version, epoch_string(ctx.epoch)});
      break;
    case DriftId::D5:
      enc.nonce = nonce.hex();
      break;
  }
  return enc;
}

ContextEncoding encode_for(const std::optional<DriftId>& drift, const ContextTuple& ctx,
                           const Nonce& nonce) {
  return drift ? drift_encode(*drift, ctx, nonce) : canonical_encoding(ctx, nonce);
}

}  // namespace ctxbind
