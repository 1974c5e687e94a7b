#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omsim/core.hpp"
#include "omsim/rng.hpp"

namespace omsim {

// One row of a router's interpretation table: how an incoming routing-field
// value is understood during a given epoch.
struct InterpretationEntry {
    std::uint32_t incoming_value = 0;
    std::optional<NodeId> next_hop; // nullopt: deliver to this node's endpoint
    std::uint32_t outgoing_value = 0;
    std::uint64_t epoch = 0;
    bool active = true;
};

struct RouterCounters {
    std::uint64_t frames = 0;
    std::uint64_t lookups = 0;
    std::uint64_t rewrites = 0;
    std::uint64_t forwards = 0;
    std::uint64_t local_delivers = 0;
    std::uint64_t drops = 0;
};

struct RouterMtdState {
    NodeId router{};
    int n_bits = 8;
    std::vector<InterpretationEntry> entries;
    // (epoch, deadline) pairs scheduled for timeout deactivation.
    std::vector<std::pair<std::uint64_t, SimTime>> pending_deactivations;
    std::uint64_t max_epoch = 0; // highest epoch ever applied

    // Distinct incoming values with at least one active entry, sorted.
    std::vector<std::uint32_t> active_incoming_values() const;
};

struct DeactivationPolicy {
    enum class Kind { Timeout, ExplicitCommand };
    Kind kind = Kind::Timeout;
    SimTime duration = 0.0; // Timeout only

    static DeactivationPolicy timeout(SimTime d) { return {Kind::Timeout, d}; }
    static DeactivationPolicy explicit_command() { return {Kind::ExplicitCommand, 0.0}; }
};

// Full replacement table for one router under a fresh epoch. Retransmissions
// are idempotent at the protocol level: a router that already holds the epoch
// rejects the duplicate as stale but acknowledges again.
struct MtdUpdate {
    std::uint64_t update_id = 0;
    NodeId target_router{};
    std::uint64_t epoch = 0;
    std::vector<InterpretationEntry> new_entries; // distinct incoming values
    DeactivationPolicy policy;
};

enum class DropReason { UnknownField };

struct RouteDecision {
    enum class Kind { Forward, LocalDeliver, Drop };
    Kind kind = Kind::Drop;
    NodeId next_hop{};    // Forward only
    Frame frame;          // rewritten for Forward, unchanged otherwise
    DropReason reason{};  // Drop only
};

// Routes one frame through a router: a single table lookup, then a rewrite of
// the routing field. When several active epochs match the incoming value, the
// newest one supplies the outgoing value. No content-field access takes place.
// A value with no active entry is dropped as UnknownField — this discard is
// the enumeration-DoS defense at the access router.
RouteDecision route_frame(const RouterMtdState& state, const Frame& frame,
                          RouterCounters* counters = nullptr);

enum class ApplyStatus { Applied, StaleEpoch };

struct ApplyOutcome {
    ApplyStatus status = ApplyStatus::Applied;
    // Deactivations newly scheduled by a Timeout policy; the caller turns
    // these into engine events.
    std::vector<std::pair<std::uint64_t, SimTime>> new_deactivations;
};

// Activates the update's entries. Entries of earlier epochs stay active
// (coexistence) until deactivated. Updates with an epoch at or below the
// highest held one are rejected as StaleEpoch. Throws MalformedSpec when the
// update targets a different router, carries colliding incoming values, or
// disagrees with an active entry's next hop for a shared incoming value
// (which would break lossless switchover).
ApplyOutcome apply_update(RouterMtdState& state, const MtdUpdate& update, SimTime now);

enum class DeactivateStatus { Deactivated, AlreadyInactive };

// Marks every entry of `epoch` inactive. Throws UnknownEpoch if the router
// never held that epoch.
DeactivateStatus deactivate_epoch(RouterMtdState& state, std::uint64_t epoch, SimTime now);

// --- Controller ---------------------------------------------------------------

// A unidirectional O&M data flow and its per-link routing-field values.
// path[0] is the emitting endpoint; every later node runs a router.
// values[i] is the value on the wire of link path[i] -> path[i+1]; values[0]
// is the flow's fixed ingress label, values[1..] are re-keyed by updates.
struct Flow {
    std::uint32_t id = 0;
    std::string name;
    std::string key_id; // E2E key shared by the endpoints
    std::vector<NodeId> path;
    std::vector<std::uint32_t> values;

    std::size_t link_count() const { return path.empty() ? 0 : path.size() - 1; }
    NodeId src() const { return path.front(); }
    NodeId dst() const { return path.back(); }
};

// Ground-side MTD controller: owns the epoch counter, the record of value
// assignments in force at each router, and fresh-value generation. Fresh
// values are drawn uniformly from the values unused at both routers adjacent
// to the updated link.
class MtdController {
public:
    explicit MtdController(int n_bits);

    // Registers the flow, assigning any values still unset (marked by
    // kUnsetValue) collision-free. Returns the initial interpretation tables,
    // one update per router, ordered for receiver-first installation
    // (downstream router first).
    std::vector<MtdUpdate> register_flow(Flow flow, RngStream& rng, DeactivationPolicy policy);

    // Re-keys the selected links of a flow under one fresh epoch. `selection`
    // holds value indices in [1, link_count); empty selects all of them.
    // `pinned` forces specific values (scripted scenarios); pinned values must
    // still be free. Returns one full-replacement update per affected router,
    // downstream first. Throws ValueSpaceExhausted when no free value exists.
    std::vector<MtdUpdate> generate_update(std::uint32_t flow_id, std::vector<std::size_t> selection,
                                           RngStream& rng, DeactivationPolicy policy,
                                           const std::map<std::size_t, std::uint32_t>* pinned = nullptr);

    // Forgets lingering pre-update values at `router` once their epochs are
    // confirmed deactivated, making them reusable.
    void confirm_deactivated(NodeId router, std::uint64_t below_epoch);

    const Flow& flow(std::uint32_t id) const;
    std::vector<std::uint32_t> flow_ids() const;

    // Values the controller believes are in use at a router (current entries
    // plus lingering superseded ones), sorted ascending.
    std::vector<std::uint32_t> active_values(NodeId router) const;

    std::uint64_t last_epoch(NodeId router) const;

    static constexpr std::uint32_t kUnsetValue = 0xFFFFFFFFu;

private:
    struct Hop {
        std::uint32_t incoming = 0;
        std::optional<NodeId> next_hop;
        std::uint32_t outgoing = 0;
    };
    struct RouterView {
        std::map<std::uint32_t, Hop> current; // flow id -> hop in force
        std::set<std::uint32_t> lingering;    // superseded values awaiting retirement
        std::uint64_t last_epoch = 0;
    };

    std::uint32_t pick_fresh_value(const std::set<std::uint32_t>& used, RngStream& rng) const;
    std::set<std::uint32_t> used_values(NodeId router) const;
    MtdUpdate full_table_update(NodeId router, std::uint64_t epoch, DeactivationPolicy policy);
    void record_hop(NodeId router, std::uint32_t flow_id, const Hop& hop);

    int n_bits_;
    std::uint64_t next_epoch_ = 1;
    std::uint64_t next_update_id_ = 1;
    std::map<std::uint32_t, Flow> flows_;
    std::map<NodeId, RouterView> routers_;
};

} // namespace omsim
