#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "omsim/adversary.hpp"
#include "omsim/core.hpp"
#include "omsim/engine.hpp"
#include "omsim/mtd.hpp"
#include "omsim/rng.hpp"

namespace omsim {

struct MtdSimConfig {
    std::uint64_t seed = 1;
    DeactivationPolicy policy = DeactivationPolicy::explicit_command();
    double update_loss_prob = 0.0; // per control-plane delivery attempt
    double mgmt_latency = 0.2;     // added on top of the controller->router path latency
    double mgmt_jitter = 0.0;      // uniform extra delay per delivery
    double ack_timeout = 5.0;      // resend an update when unacknowledged this long
    double drain_delay = 2.0;      // in-flight drain before old epochs retire
    int max_send_attempts = 100;
};

// Data-plane and control-plane harness for the routing-field defense: owns the
// event engine, per-router interpretation tables, the ground controller, link
// observers and the injection surface for attacks.
//
// Control-plane deliveries (updates, acks, deactivations) are addressed to
// their satellite and carried end-to-end with the path latency; they do not
// consult interpretation tables. Update rounds install receiver-side tables
// first: the controller sends to the router closest to the destination and
// advances upstream only on acknowledgment, so a sender never emits a value
// its next hop cannot interpret, whatever delays or losses occur.
class MtdSim {
public:
    MtdSim(const Topology& topo, MtdSimConfig cfg);

    Engine& engine() { return engine_; }
    const Topology& topology() const { return topo_; }
    MtdController& controller() { return controller_; }

    // Registers a flow from src to dst along the shortest path and installs
    // its initial interpretation tables. `values` pins the per-link values
    // (MtdController::kUnsetValue entries are drawn); empty draws all.
    std::uint32_t add_flow(const std::string& name, NodeId src, NodeId dst,
                           std::vector<std::uint32_t> values = {});

    void observe_link(LinkId link);

    // --- data plane ---
    std::uint64_t emit_frame(std::uint32_t flow_id); // at engine.now()
    void schedule_emission(std::uint32_t flow_id, SimTime at);
    // Attacker surface: a crafted frame appears on `link` addressed at
    // `entry` (the access router). Returns the frame sequence number.
    void schedule_injection(LinkId link, NodeId entry, std::uint32_t value, SimTime at);

    // --- control plane ---
    void schedule_update_round(std::uint32_t flow_id, SimTime at,
                               std::vector<std::size_t> selection = {},
                               std::map<std::size_t, std::uint32_t> pinned = {});
    void start_periodic_updates(std::uint32_t flow_id, SimTime first, SimTime period,
                                std::vector<std::size_t> selection = {});

    // --- state access ---
    const RouterMtdState& router_state(NodeId n) const { return routers_.at(n); }
    RouterMtdState& router_state_mut(NodeId n) { return routers_.at(n); }
    bool has_router_state(NodeId n) const { return routers_.count(n) > 0; }
    const RouterCounters& counters(NodeId n) const { return counters_.at(n); }
    const Flow& flow(std::uint32_t id) const { return controller_.flow(id); }

    struct Delivery {
        std::uint64_t frame_seq = 0;
        std::uint32_t flow_id = 0;
        NodeId at{};
        SimTime time = 0.0;
        DecryptStatus auth{};
    };
    struct DropRecord {
        std::uint64_t frame_seq = 0;
        std::uint32_t flow_id = 0;
        NodeId at{};
        SimTime time = 0.0;
        std::uint32_t value = 0;
    };
    const std::vector<Delivery>& deliveries() const { return deliveries_; }
    const std::vector<DropRecord>& drops() const { return drops_; }
    std::uint64_t frames_emitted() const { return frames_emitted_; }

    const std::vector<Observation>& observations() const { return observations_; }
    const std::vector<ObservationTruth>& observation_truth() const { return truth_; }

    struct AttackProcessing {
        std::uint64_t parse = 0;
        std::uint64_t lookup = 0;
        std::uint64_t auth = 0;
        std::vector<std::uint32_t> injected_values;
        std::vector<std::uint32_t> accepted_values; // accepted at the entry router
    };
    const AttackProcessing& attack_processing() const { return attack_; }

    static constexpr std::uint32_t kAttackerFlowId = kIgnoreLabel;
    static constexpr std::uint32_t kControlLabel = 0; // wire label of control frames

    RngStream& data_rng() { return rng_data_; }
    RngStream& attacker_rng() { return rng_attacker_; }

private:
    struct UpdateRound {
        std::uint64_t id = 0;
        std::uint32_t flow_id = 0;
        std::uint64_t epoch = 0;
        std::vector<MtdUpdate> updates; // downstream router first
        std::size_t acked_count = 0;
        std::set<NodeId> acked;
        std::set<NodeId> deact_acked;
        bool deactivation_started = false;
        bool done = false;
    };

    NodeId find_nocc() const;
    std::string mgmt_key_for(NodeId router) const;
    double path_latency(NodeId a, NodeId b) const;
    void mgmt_send(NodeId from, NodeId to, MsgKind kind, const std::string& detail,
                   Engine::Action on_delivery);
    void observe_mgmt_path(NodeId from, NodeId to);
    void observe_data(const Link& link, const Frame& frame);

    void start_round(std::uint32_t flow_id, std::vector<std::size_t> selection,
                     std::map<std::size_t, std::uint32_t> pinned);
    void send_round_update(std::uint64_t round_id, std::size_t idx, int attempt);
    void router_apply(std::uint64_t round_id, std::size_t idx);
    void on_update_ack(std::uint64_t round_id, std::size_t idx);
    void start_deactivation_phase(std::uint64_t round_id);
    void send_deactivate(std::uint64_t round_id, std::size_t idx, int attempt);
    void router_deactivate(std::uint64_t round_id, std::size_t idx);
    void warn_if_stranded(NodeId router);

    void frame_arrives(NodeId node, Frame frame);
    void forward_from(NodeId node, const RouteDecision& d);

    const Topology& topo_;
    MtdSimConfig cfg_;
    Engine engine_;
    MtdController controller_;
    NodeId nocc_;

    std::map<NodeId, RouterMtdState> routers_;
    std::map<NodeId, RouterCounters> counters_;
    std::map<std::uint64_t, UpdateRound> rounds_;
    std::map<std::uint32_t, std::uint64_t> active_round_for_flow_;
    std::map<std::uint64_t, std::map<std::size_t, std::uint32_t>> injection_entry_; // seq -> value at entry
    std::map<std::uint64_t, NodeId> injection_router_;
    std::uint64_t next_round_id_ = 1;
    std::uint64_t next_frame_seq_ = 1;
    std::uint64_t frames_emitted_ = 0;

    std::set<LinkId> observed_links_;
    std::vector<Observation> observations_;
    std::vector<ObservationTruth> truth_;
    std::vector<Delivery> deliveries_;
    std::vector<DropRecord> drops_;
    AttackProcessing attack_;

    RngStream rng_values_;   // controller value generation
    RngStream rng_mgmt_;     // control-plane losses and jitter
    RngStream rng_data_;     // data-link blocking
    RngStream rng_attacker_; // attacker decisions
};

} // namespace omsim
