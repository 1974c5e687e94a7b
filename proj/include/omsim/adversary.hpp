#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omsim/core.hpp"
#include "omsim/rng.hpp"

namespace omsim {

class MtdSim;
class FallbackSim;

// One on-the-wire sighting on an eavesdroppable link. Records only cleartext
// fields; ciphertext payloads are never captured, so no field can hold them.
struct Observation {
    LinkId link{};
    SimTime time = 0.0;
    std::uint32_t routing_value = 0;
    bool content_opaque = true; // ciphertext content seen but not readable
};

// Evaluator-side ground truth aligned with an observation log. Used only to
// score attacks, never visible to attacker logic.
inline constexpr std::uint32_t kIgnoreLabel = 0xFFFFFFFFu;

struct ObservationTruth {
    std::uint32_t flow_id = kIgnoreLabel; // kIgnoreLabel: control/attacker traffic
    std::uint64_t frame_seq = 0;
};

struct AttackerKnowledge {
    std::vector<Observation> observations;
    std::vector<std::uint32_t> known_values; // value set seeding TAInformed sweeps
};

struct AttackOutcome {
    std::string attack;
    double success = 0.0; // rate in [0,1], or 0/1 for single outcomes
    std::uint64_t frames_injected = 0;
    std::uint64_t frames_accepted = 0;
    std::vector<std::uint32_t> injected_values;
    std::vector<std::uint32_t> accepted_values; // sorted
    // Onboard processing the injected frames triggered.
    std::uint64_t parse_events = 0;
    std::uint64_t lookup_events = 0;
    std::uint64_t auth_check_events = 0;
    // SMD bookkeeping.
    std::uint64_t detections = 0;
    std::uint64_t cancellations_provoked = 0;
    bool entered_safe_mode = false;
};

// --- Transmission-path tracing -------------------------------------------------

struct CandidatePath {
    std::vector<NodeId> nodes;
};

struct TptResult {
    std::size_t chosen = 0; // index into the candidate list
    bool ambiguous = false;
    std::vector<std::size_t> tied; // argmax set
    std::size_t best_score = 0;
};

// Links two observations into the same flow iff their routing values are
// equal and the time difference matches the link latencies between their
// positions on the candidate. Returns the candidate with the most matched
// observation pairs; ties are declared ambiguous and resolved by a uniform
// draw. Throws NoObservations on an empty log.
TptResult tpt_reconstruct(const AttackerKnowledge& knowledge,
                          const std::vector<CandidatePath>& candidates, const Topology& topo,
                          RngStream& tie_rng);

// --- Traffic analysis -----------------------------------------------------------

struct TaWindows {
    SimTime train_begin = 0.0;
    SimTime train_end = 0.0;
    SimTime test_begin = 0.0;
    SimTime test_end = 0.0;
};

// Frequency-table classifier: learns value -> flow label over the training
// window, classifies test-window observations, returns accuracy. Observations
// whose truth label is kIgnoreLabel are skipped. Unseen values fall back to a
// uniform guess over `labels`. Throws InsufficientSamples when either window
// holds no evaluable observation.
double ta_classify(const AttackerKnowledge& knowledge, const std::vector<std::uint32_t>& truth,
                   const std::vector<std::uint32_t>& labels, const TaWindows& windows,
                   RngStream& guess_rng);

// --- DoS via routing-field enumeration -------------------------------------------

enum class DosStrategy { ExhaustiveSweep, TAInformed };

struct DosParams {
    LinkId attack_link{};
    NodeId entry_router{};
    DosStrategy strategy = DosStrategy::ExhaustiveSweep;
    SimTime start = 1.0;
    SimTime spacing = 0.0; // delay between consecutive injections
    std::vector<std::uint32_t> known_values; // TAInformed sweep set
};

// Injects one frame per chosen value on the attack link and accounts for the
// onboard work they trigger. Acceptance = fraction forwarded (rather than
// dropped) at the entry router.
AttackOutcome dos_enumerate(MtdSim& sim, const DosParams& params, SimTime run_to);

// --- Safe-mode downgrade campaign --------------------------------------------------

struct SmdParams {
    SimTime first_injection = 0.0;
    SimTime injection_period = 0.0; // 0: single injection
    std::uint64_t max_injections = 1;
};

// Periodically injects forged delayed-fallback commands on the uplink;
// reports whether the satellite ever left ciphered operation and how many
// cancellations the campaign provoked.
AttackOutcome smd_campaign(FallbackSim& sim, const SmdParams& params, SimTime run_to);

} // namespace omsim
