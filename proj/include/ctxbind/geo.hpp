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
#include <compare>
#include <cstdint>
#include <vector>

// Fixed-point proximity predicate (integer microdegrees) plus the
// floating-point haversine oracle it is measured against.
namespace ctxbind::geo {

inline constexpr std::int64_t kMicro = 1'000'000;
inline constexpr std::int64_t kMaxLatUdeg = 90'000'000;
inline constexpr std::int64_t kMaxLonUdeg = 180'000'000;

/// Metres per degree used by the circuit's radius conversion and by the
/// offset fixture generator.
inline constexpr double kMetersPerDegree = 111'319.49;
/// Sphere radius of the haversine oracle.
inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoPoint {
  std::int64_t lat_udeg = 0;
  std::int64_t lon_udeg = 0;

  static GeoPoint from_degrees(double lat, double lon);
  double lat_deg() const { return static_cast<double>(lat_udeg) / kMicro; }
  double lon_deg() const { return static_cast<double>(lon_udeg) / kMicro; }

  friend auto operator<=>(const GeoPoint&, const GeoPoint&) = default;
};

/// Throws DomainError if the point is outside |lat| <= 90°, |lon| <= 180°.
void validate(const GeoPoint& p);

struct Meters {
  double value = 0.0;

  Meters() = default;
  /// Throws DomainError for negative or non-finite input.
  explicit Meters(double v);

  friend auto operator<=>(const Meters&, const Meters&) = default;
};

/// Public geometry of an unlock statement.
struct GeoParams {
  GeoPoint target;
  std::int64_t r2_udeg2 = 0;    // squared radius, microdegree-equivalent units
  std::int64_t cos_scaled = 0;  // round(cos(target latitude) * 1e6)

  friend bool operator==(const GeoParams&, const GeoParams&) = default;
};

/// Builds consistent parameters for a radius in metres.
GeoParams make_params(const GeoPoint& target, Meters radius);
/// round(r * 1e6 / kMetersPerDegree)
std::int64_t radius_udeg(Meters radius);

enum class Bearing { North, East, South, West };

/// round(cos(lat) * 1e6). Throws DomainError when |lat_udeg| > 90e6.
std::int64_t cos_scaled(std::int64_t lat_udeg);

/// dlat^2 + dlon_adj^2 with dlon_adj = floor(|dlon| * cos_scaled / 1e6).
///
/// Exact in int64 for any valid inputs: |dlat| <= 1.8e8, |dlon| * cos_scaled
/// <= 3.6e14, and the sum of squares stays below 2e17.
std::int64_t fixed_distance_sq(const GeoPoint& point, const GeoParams& params);

bool within_radius(const GeoPoint& point, const GeoParams& params);

Meters haversine(const GeoPoint& a, const GeoPoint& b);

/// Equirectangular inverse for small offsets (< 10 km), rounded to the
/// nearest microdegree. East/west offsets within 1° of a pole are a domain
/// error, as is a result outside the valid coordinate range.
GeoPoint offset_point(const GeoPoint& origin, Bearing bearing, Meters distance);
/// Same, for an arbitrary compass bearing in degrees (0 = north, 90 = east).
GeoPoint offset_point(const GeoPoint& origin, double bearing_deg, Meters distance);

inline constexpr std::array<double, 8> kSweepLatitudes{0.0,  15.0, 30.0, 35.66,
                                                       45.0, 60.0, 75.0, 85.0};
inline constexpr std::array<double, 5> kSweepRadii{25.0, 50.0, 100.0, 200.0, 500.0};

struct AccuracyCell {
  double latitude_deg = 0.0;
  double radius_m = 0.0;
  double max_error_m = 0.0;  // max over 8 bearings of |flip distance - r|
};

/// Bisects along 8 compass bearings for the haversine distance at which
/// within_radius flips, for every (latitude, radius) of the sweep grid.
std::vector<AccuracyCell> accuracy_sweep();

/// One cell of the sweep; exposed for tests.
AccuracyCell accuracy_cell(double latitude_deg, double radius_m);

}  // namespace ctxbind::geo
