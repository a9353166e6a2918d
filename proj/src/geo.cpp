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

#include "ctxbind/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctxbind/errors.hpp"

namespace ctxbind::geo {

namespace {

constexpr double kPoleLimitUdeg = 89.0 * kMicro;
constexpr double kMaxOffsetM = 10'000.0;

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::int64_t round_udeg(double deg) { return std::llround(deg * kMicro); }

}  // namespace

GeoPoint GeoPoint::from_degrees(double lat, double lon) {
  GeoPoint p{round_udeg(lat), round_udeg(lon)};
  validate(p);
  return p;
}

void validate(const GeoPoint& p) {
  if (std::abs(p.lat_udeg) > kMaxLatUdeg) throw DomainError("latitude out of range");
  if (std::abs(p.lon_udeg) > kMaxLonUdeg) throw DomainError("longitude out of range");
}

Meters::Meters(double v) : value(v) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError("distance must be finite and >= 0");
}

std::int64_t cos_scaled(std::int64_t lat_udeg) {
  if (std::abs(lat_udeg) > kMaxLatUdeg) throw DomainError("latitude out of range");
  const double c = std::cos(radians(static_cast<double>(lat_udeg) / kMicro));
  return std::clamp<std::int64_t>(std::llround(c * kMicro), 0, kMicro);
}

std::int64_t radius_udeg(Meters radius) {
  return std::llround(radius.value * kMicro / kMetersPerDegree);
}

GeoParams make_params(const GeoPoint& target, Meters radius) {
  validate(target);
  const std::int64_t r = radius_udeg(radius);
  return GeoParams{target, r * r, cos_scaled(target.lat_udeg)};
}

std::int64_t fixed_distance_sq(const GeoPoint& point, const GeoParams& params) {
  const std::int64_t dlat = std::abs(point.lat_udeg - params.target.lat_udeg);
  const std::int64_t dlon = std::abs(point.lon_udeg - params.target.lon_udeg);
  // Non-negative operands, so integer division is floor.
  const std::int64_t dlon_adj = dlon * params.cos_scaled / kMicro;
  return dlat * dlat + dlon_adj * dlon_adj;
}

bool within_radius(const GeoPoint& point, const GeoParams& params) {
  return fixed_distance_sq(point, params) <= params.r2_udeg2;
}

Meters haversine(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = radians(a.lat_deg());
  const double phi2 = radians(b.lat_deg());
  const double dphi = phi2 - phi1;
  const double dlambda = radians(b.lon_deg() - a.lon_deg());
  const double s1 = std::sin(dphi / 2);
  const double s2 = std::sin(dlambda / 2);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return Meters(2.0 * kEarthRadiusM * std::asin(std::sqrt(h)));
}

GeoPoint offset_point(const GeoPoint& origin, double bearing_deg, Meters distance) {
  validate(origin);
  if (distance.value >= kMaxOffsetM) throw DomainError("offset must be below 10 km");
  const double theta = radians(bearing_deg);
  const double north = distance.value * std::cos(theta);
  const double east = distance.value * std::sin(theta);

  GeoPoint out = origin;
  out.lat_udeg += round_udeg(north / kMetersPerDegree);
  if (std::abs(east) > 1e-12) {
    if (std::abs(static_cast<double>(origin.lat_udeg)) > kPoleLimitUdeg) {
      throw DomainError("east/west offset too close to a pole");
    }
    const double cos_lat = std::cos(radians(origin.lat_deg()));
    out.lon_udeg += round_udeg(east / (kMetersPerDegree * cos_lat));
  }
  validate(out);
  return out;
}

GeoPoint offset_point(const GeoPoint& origin, Bearing bearing, Meters distance) {
  switch (bearing) {
    case Bearing::North: return offset_point(origin, 0.0, distance);
    case Bearing::East: return offset_point(origin, 90.0, distance);
    case Bearing::South: return offset_point(origin, 180.0, distance);
    case Bearing::West: return offset_point(origin, 270.0, distance);
  }
  throw DomainError("unknown bearing");
}

AccuracyCell accuracy_cell(double latitude_deg, double radius_m) {
  const GeoPoint origin = GeoPoint::from_degrees(latitude_deg, 0.0);
  const GeoParams params = make_params(origin, Meters(radius_m));

  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double bearing = 45.0 * k;
    auto at = [&](double d) { return offset_point(origin, bearing, Meters(d)); };
    // Accept at 0, reject at 2r; rounding is monotone along a ray, so the
    // predicate flips exactly once.
    double lo = 0.0;
    double hi = 2.0 * radius_m;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (within_radius(at(mid), params)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double flip = 0.5 * (haversine(origin, at(lo)).value + haversine(origin, at(hi)).value);
    worst = std::max(worst, std::abs(flip - radius_m));
  }
  return AccuracyCell{latitude_deg, radius_m, worst};
}

std::vector<AccuracyCell> accuracy_sweep() {
  std::vector<AccuracyCell> cells;
  cells.reserve(kSweepLatitudes.size() * kSweepRadii.size());
  for (double lat : kSweepLatitudes) {
    for (double r : kSweepRadii) cells.push_back(accuracy_cell(lat, r));
  }
  return cells;
}

}  // namespace ctxbind::geo
