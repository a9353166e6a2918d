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
#include <string_view>
#include <vector>

#include "ctxbind/codec.hpp"
#include "ctxbind/geo.hpp"
#include "ctxbind/server.hpp"

// Attack scenarios, games and venue simulations. Every function owns its
// keys and server state; nothing is shared between calls.
namespace ctxbind::lab {

namespace fixture {
inline constexpr geo::GeoPoint kTokyo{35'660'000, 139'700'000};
inline constexpr geo::GeoPoint kHelsinki{60'170'000, 24'940'000};
inline constexpr geo::GeoPoint kShibuya{35'659'500, 139'700'600};
inline constexpr double kRadiusM = 50.0;
inline constexpr std::string_view kPolicyVersion = "2";
}  // namespace fixture

enum class ScenarioId { A, B, C, D, E, F, G };

inline constexpr std::array<ScenarioId, 7> kAllScenarios{
    ScenarioId::A, ScenarioId::B, ScenarioId::C, ScenarioId::D,
    ScenarioId::E, ScenarioId::F, ScenarioId::G};

std::string_view to_string(ScenarioId id);  // "A".."G"
std::string_view describe(ScenarioId id);   // "Cross-drop", ...
std::string_view attack(ScenarioId id);     // "Naive replay", ...

enum class Outcome { Accept, Reject, NotApplicable };
std::string_view to_string(Outcome o);  // "A", "R", "N/A"
Outcome to_outcome(const Verdict& v);

struct ScenarioResult {
  Outcome outcome = Outcome::NotApplicable;
  std::optional<RejectReason> reason;
};

/// Two coordinate-identical drops X and Y (Tokyo fixture, 50 m). X's honest
/// proof is the source transcript.
///
///   A  claim X honestly            E  mutate one context slot, retarget to Y
///   B  claim Y with X's bundle     F  claim Y with Y's bundle from another session
///   C  claim X after epoch advance G  claim Y with Y's bundle from the same epoch
///   D  B with the client check bypassed
///
/// Under epoch-derived nonces F obtains Y's bundle in the next epoch, the
/// only way to get a distinct nonce. E is N/A on 5-signal circuits.
ScenarioResult run_scenario(ScenarioId id, Strategy strategy, NoncePolicy policy,
                            const FaultSet& faults = {},
                            CircuitProfile profile = CircuitProfile::Generic,
                            std::uint64_t seed = 1);

/// Matrix columns: None, Cli., Srv.r, Srv.s, Srv.σ, (ii), (iii).
inline constexpr std::array<Strategy, 7> kMatrixStrategies{
    Strategy::S1,  Strategy::S2a, Strategy::S2b, Strategy::S2c_default,
    Strategy::S2d, Strategy::S3a, Strategy::S3b};
inline constexpr std::array<std::string_view, 7> kMatrixColumns{
    "None", "Cli.", "Srv.r", "Srv.s", "Srv.σ", "(ii)", "(iii)"};

/// Nonce policy each matrix row runs under: G epoch-derived, else per-request.
NoncePolicy matrix_policy(ScenarioId id);

using Matrix = std::array<std::array<Outcome, 7>, 7>;  // [scenario][column]
Matrix run_full_matrix(std::uint64_t seed = 1);

enum class ContextElement { DropId, PolicyVersion, Epoch, ServerNonce };
inline constexpr std::array<ContextElement, 4> kAllElements{
    ContextElement::DropId, ContextElement::PolicyVersion, ContextElement::Epoch,
    ContextElement::ServerNonce};
std::string_view to_string(ContextElement e);  // "drop_id", ...
std::string_view attack(ContextElement e);     // "Cross-drop replay", ...

struct AblationResult {
  Outcome prototype;
  Outcome level_iii;
};

/// Honest proof, then the verifier's expected value for `element` changes.
/// The prototype only checks its proof; the 8-signal verifier rebuilds the
/// expected public signals from the mutated context.
AblationResult run_ablation(ContextElement element, std::uint64_t seed = 1);

enum class TranscriptAdversary { ReplayOriginal, ModifySignals, FreshProofNoWitness };
inline constexpr std::array<TranscriptAdversary, 3> kAllTranscriptAdversaries{
    TranscriptAdversary::ReplayOriginal, TranscriptAdversary::ModifySignals,
    TranscriptAdversary::FreshProofNoWitness};
std::string_view to_string(TranscriptAdversary a);

/// Two same-geo contexts, an honest proof for the first; the adversary
/// holds the transcript and the verifying key but neither witness nor
/// proving key. Returns true if it gets a claim for ctx2 accepted.
bool transcript_transfer_game(TranscriptAdversary adversary, std::uint64_t seed);

struct GameOutcome {
  int wins = 0;
  int trials = 0;
  double win_rate() const { return trials == 0 ? 0.0 : static_cast<double>(wins) / trials; }
};

/// n same-geo drops, all challenged; the adversary holds (π1, pub1) and
/// every issued bundle, and claims a uniformly drawn drop j in {2..n} with
/// either bundle 1 or bundle j. Runs on the nonce-bound circuit profile.
/// Throws std::invalid_argument if n < 2 or trials < 1.
GameOutcome context_binding_game(Strategy strategy, int n, NoncePolicy policy,
                                 const FaultSet& faults, int trials, std::uint64_t seed);

enum class Level { II, III };

struct VenueResult {
  int attempts = 0;
  int accepted = 0;
};

/// k co-located drops sharing one epoch nonce; every ordered pair (i, j)
/// attempts to pass drop i's proof off as drop j's.
VenueResult multi_drop_venue(int k, Level level, std::uint64_t seed = 1);

/// Shared epoch and nonce, identical geo: the k 7-signal vectors serialize
/// identically and the k 8-signal vectors differ pairwise in slot 5 only.
/// Throws std::invalid_argument if k < 2.
bool shared_epoch_check(int k);

struct DriftRow {
  Outcome recompute;  // 2b
  Outcome stored;     // 2c-hardened
  Outcome in_proof;   // 3b
};

/// Honest claim verified under encoder drift (nullopt = baseline).
DriftRow drift_experiment(std::optional<DriftId> variant, std::uint64_t seed = 1);
/// Same honest claim for an arbitrary strategy.
Outcome drift_outcome(Strategy strategy, std::optional<DriftId> variant, std::uint64_t seed = 1);

struct E2EResult {
  Outcome level_ii;
  Outcome level_iii;
  std::vector<std::size_t> target_slot_diff;  // between the two 8-signal targets
};

/// Two co-located drops at the Shibuya fixture; drop A's proof is claimed
/// for drop B. Only F and G are defined; anything else throws.
E2EResult e2e_cross_drop(ScenarioId scenario, std::uint64_t seed = 1);

/// Whether `strategy` resists the same-epoch transfer (scenario G under
/// epoch-derived nonces on the nonce-bound profile).
bool resists_scenario_g(Strategy strategy, std::uint64_t seed = 1);

}  // namespace ctxbind::lab
