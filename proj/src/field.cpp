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

#include "ctxbind/field.hpp"

#include <limits>
#include <stdexcept>

#include "ctxbind/errors.hpp"

namespace ctxbind {

const FieldElement::Int& FieldElement::modulus() {
  static const Int p(
      "21888242871839275222246405745257275088548364400416034343698204186575808495617");
  return p;
}

FieldElement::FieldElement(Int value) : value_(std::move(value)) {
  if (value_ < 0 || value_ >= modulus()) {
    throw std::out_of_range("field element out of range");
  }
}

FieldElement FieldElement::reduce(const Int& value) {
  Int r = value % modulus();
  if (r < 0) r += modulus();
  return FieldElement(std::move(r));
}

FieldElement FieldElement::from_signed(std::int64_t value) {
  if (value >= 0) return FieldElement(Int(value));
  return FieldElement(modulus() + Int(value));
}

FieldElement FieldElement::from_bytes_be(std::span<const std::uint8_t> bytes) {
  Int v;
  if (!bytes.empty()) {
    boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8, true);
  }
  return reduce(v);
}

FieldElement FieldElement::from_decimal(std::string_view text) {
  if (text.empty() || text.size() > 78) throw EncodingError("bad field element literal");
  for (char c : text) {
    if (c < '0' || c > '9') throw EncodingError("bad field element literal");
  }
  if (text.size() > 1 && text.front() == '0') {
    throw EncodingError("non-canonical field element literal");
  }
  Int v{std::string(text)};
  if (v >= modulus()) throw EncodingError("field element literal >= p");
  return FieldElement(std::move(v));
}

std::string FieldElement::to_decimal() const { return value_.str(); }

std::int64_t FieldElement::to_signed() const {
  static const Int kMax(std::numeric_limits<std::int64_t>::max());
  if (value_ <= kMax) return static_cast<std::int64_t>(value_);
  const Int neg = value_ - modulus();
  if (-neg <= kMax) return static_cast<std::int64_t>(neg);
  throw std::out_of_range("field element is not an embedded int64");
}

}  // namespace ctxbind
