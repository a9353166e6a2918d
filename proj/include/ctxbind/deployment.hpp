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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxbind/server.hpp"

// Closed-form latency and exposure analytics for co-located unlocks.
namespace ctxbind::deploy {

/// Affine latency model fitted to reference end-to-end figures:
///
///   e2e = session_base + k * per_unlock + overhead(strategy) + trips * rtt
///
/// with trips = k for per-request nonces and 1 for an epoch nonce. The
/// constants are modelling choices, not measurements.
struct LatencyParams {
  std::int64_t session_base_ms = 50;
  std::int64_t per_unlock_ms = 70;
  std::int64_t sig_overhead_ms = 20;     // 2d token signing and checking
  std::int64_t stored_overhead_ms = 100;  // 2c per-drop digest bookkeeping
  std::int64_t threshold_ms = 1000;
};

std::int64_t round_trips(NoncePolicy policy, std::int64_t k);
std::int64_t overhead_ms(Strategy strategy, const LatencyParams& p = {});

/// Throws std::invalid_argument for k < 1 or rtt < 0.
std::int64_t e2e_latency(Strategy strategy, NoncePolicy policy, std::int64_t k,
                         std::int64_t rtt_ms, const LatencyParams& p = {});

inline constexpr std::int64_t kMaxKStar = 1'000'000;

/// Smallest k with e2e_latency > threshold, or nullopt if none up to 10^6.
std::optional<std::int64_t> k_star(Strategy strategy, NoncePolicy policy, std::int64_t rtt_ms,
                                   const LatencyParams& p = {});

/// Ordered cross-drop transfer pairs among k drops sharing one epoch nonce.
std::int64_t epoch_vulnerable_pairs(std::int64_t k);
std::int64_t session_pairs(std::int64_t k, std::int64_t session_epochs = 10);

struct VenueDensity {
  std::string name;
  std::int64_t k50 = 0;   // POIs within 50 m
  std::int64_t k100 = 0;  // POIs within 100 m
};

/// OSM amenity/shop counts, measured 2026-03-17.
std::vector<VenueDensity> builtin_venues();

/// JSON array of {"name", "k50", "k100"}. Throws std::invalid_argument on
/// malformed input or k50 > k100.
std::vector<VenueDensity> parse_venues(std::string_view json);
std::vector<VenueDensity> load_venues(const std::string& path);

struct VenueExposure {
  std::string name;
  std::int64_t k = 0;
  std::int64_t pairs_per_epoch = 0;
  std::int64_t session_pairs = 0;
  std::int64_t level_iii_pairs = 0;
};

/// Exposure at k = k50 for each venue.
std::vector<VenueExposure> venue_report(const std::vector<VenueDensity>& venues);

}  // namespace ctxbind::deploy
