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

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctxbind {

/// Element of the BN128 (alt-bn128) scalar field, 0 <= value < p.
///
/// Signed quantities (microdegree coordinates) embed as p + x for x < 0, the
/// way a circuit over Z_p sees them. to_signed() undoes that for values
/// within int64 range of either 0 or p.
class FieldElement {
 public:
  using Int = boost::multiprecision::cpp_int;

  FieldElement() = default;

  /// Throws std::out_of_range unless 0 <= value < p.
  explicit FieldElement(Int value);

  static const Int& modulus();
  static FieldElement reduce(const Int& value);
  static FieldElement from_signed(std::int64_t value);
  /// Big-endian bytes, reduced mod p.
  static FieldElement from_bytes_be(std::span<const std::uint8_t> bytes);
  /// Throws EncodingError on anything but a canonical decimal < p.
  static FieldElement from_decimal(std::string_view text);

  const Int& value() const { return value_; }
  std::string to_decimal() const;
  /// Throws std::out_of_range when the element is not an embedded int64.
  std::int64_t to_signed() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Int value_{0};
};

}  // namespace ctxbind
