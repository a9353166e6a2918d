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

#include "ctxbind/deployment.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ctxbind::deploy {

std::int64_t round_trips(NoncePolicy policy, std::int64_t k) {
  return policy == NoncePolicy::PerRequest ? k : 1;
}

std::int64_t overhead_ms(Strategy strategy, const LatencyParams& p) {
  switch (strategy) {
    case Strategy::S2d: return p.sig_overhead_ms;
    case Strategy::S2c_default:
    case Strategy::S2c_hardened: return p.stored_overhead_ms;
    default: return 0;
  }
}

std::int64_t e2e_latency(Strategy strategy, NoncePolicy policy, std::int64_t k,
                         std::int64_t rtt_ms, const LatencyParams& p) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (rtt_ms < 0) throw std::invalid_argument("rtt must be >= 0");
  return p.session_base_ms + k * p.per_unlock_ms + overhead_ms(strategy, p) +
         round_trips(policy, k) * rtt_ms;
}

std::optional<std::int64_t> k_star(Strategy strategy, NoncePolicy policy, std::int64_t rtt_ms,
                                   const LatencyParams& p) {
  for (std::int64_t k = 1; k <= kMaxKStar; ++k) {
    if (e2e_latency(strategy, policy, k, rtt_ms, p) > p.threshold_ms) return k;
  }
  return std::nullopt;
}

std::int64_t epoch_vulnerable_pairs(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  return k == 0 ? 0 : k * (k - 1);
}

std::int64_t session_pairs(std::int64_t k, std::int64_t session_epochs) {
  if (session_epochs < 0) throw std::invalid_argument("session_epochs must be >= 0");
  return session_epochs * epoch_vulnerable_pairs(k);
}

std::vector<VenueDensity> builtin_venues() {
  return {
      {"Shinjuku (Tokyo)", 11, 26},     {"Nakano (Tokyo)", 18, 42},
      {"Kichijoji (Tokyo)", 23, 80},    {"Tama-Center (Tokyo)", 3, 16},
      {"Times Sq. (NYC)", 11, 40},      {"Oxford Circus (London)", 15, 49},
      {"Alexanderplatz (Berlin)", 5, 23},
  };
}

std::vector<VenueDensity> parse_venues(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("venues: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("venues: expected a JSON array");
  std::vector<VenueDensity> out;
  for (const auto& v : j) {
    VenueDensity d;
    try {
      d.name = v.at("name").get<std::string>();
      d.k50 = v.at("k50").get<std::int64_t>();
      d.k100 = v.at("k100").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("venues: ") + e.what());
    }
    if (d.k50 < 0 || d.k50 > d.k100) {
      throw std::invalid_argument("venues: need 0 <= k50 <= k100 for " + d.name);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<VenueDensity> load_venues(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open venues file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_venues(buf.str());
}

std::vector<VenueExposure> venue_report(const std::vector<VenueDensity>& venues) {
  std::vector<VenueExposure> out;
  out.reserve(venues.size());
  for (const auto& v : venues) {
    out.push_back({v.name, v.k50, epoch_vulnerable_pairs(v.k50), session_pairs(v.k50), 0});
  }
  return out;
}

}  // namespace ctxbind::deploy
