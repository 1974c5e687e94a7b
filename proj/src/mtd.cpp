#include "omsim/mtd.hpp"

#include <algorithm>

namespace omsim {

std::vector<std::uint32_t> RouterMtdState::active_incoming_values() const {
    std::set<std::uint32_t> vals;
    for (const auto& e : entries) {
        if (e.active) vals.insert(e.incoming_value);
    }
    return {vals.begin(), vals.end()};
}

RouteDecision route_frame(const RouterMtdState& state, const Frame& frame,
                          RouterCounters* counters) {
    if (frame.routing >= (1u << state.n_bits))
        throw MalformedSpec("routing value does not fit " + std::to_string(state.n_bits) +
                            " bits");
    if (counters) {
        ++counters->frames;
        ++counters->lookups;
    }
    const InterpretationEntry* best = nullptr;
    for (const auto& e : state.entries) {
        if (!e.active || e.incoming_value != frame.routing) continue;
        if (!best || e.epoch > best->epoch) best = &e;
    }
    RouteDecision d;
    d.frame = frame;
    if (!best) {
        d.kind = RouteDecision::Kind::Drop;
        d.reason = DropReason::UnknownField;
        if (counters) ++counters->drops;
        return d;
    }
    if (!best->next_hop) {
        d.kind = RouteDecision::Kind::LocalDeliver;
        if (counters) ++counters->local_delivers;
        return d;
    }
    d.kind = RouteDecision::Kind::Forward;
    d.next_hop = *best->next_hop;
    d.frame.routing = best->outgoing_value;
    if (counters) {
        ++counters->rewrites;
        ++counters->forwards;
    }
    return d;
}

ApplyOutcome apply_update(RouterMtdState& state, const MtdUpdate& update, SimTime now) {
    if (update.target_router != state.router)
        throw MalformedSpec("update targets a different router");
    if (update.epoch <= state.max_epoch) return {ApplyStatus::StaleEpoch, {}};

    std::set<std::uint32_t> incoming;
    for (const auto& e : update.new_entries) {
        if (!incoming.insert(e.incoming_value).second)
            throw MalformedSpec("update entries collide on incoming value");
        for (const auto& held : state.entries) {
            if (held.active && held.incoming_value == e.incoming_value &&
                held.next_hop != e.next_hop)
                throw MalformedSpec("update disagrees on next hop for a shared incoming value");
        }
    }

    std::set<std::uint64_t> superseded;
    for (const auto& held : state.entries) {
        if (held.active) superseded.insert(held.epoch);
    }

    for (InterpretationEntry e : update.new_entries) {
        e.epoch = update.epoch;
        e.active = true;
        state.entries.push_back(e);
    }
    state.max_epoch = update.epoch;

    ApplyOutcome out;
    if (update.policy.kind == DeactivationPolicy::Kind::Timeout) {
        for (std::uint64_t epoch : superseded) {
            bool already = false;
            for (const auto& [e, _] : state.pending_deactivations) {
                if (e == epoch) already = true;
            }
            if (already) continue;
            const SimTime deadline = now + update.policy.duration;
            state.pending_deactivations.emplace_back(epoch, deadline);
            out.new_deactivations.emplace_back(epoch, deadline);
        }
    }
    return out;
}

DeactivateStatus deactivate_epoch(RouterMtdState& state, std::uint64_t epoch, SimTime /*now*/) {
    bool known = false;
    bool changed = false;
    for (auto& e : state.entries) {
        if (e.epoch != epoch) continue;
        known = true;
        if (e.active) {
            e.active = false;
            changed = true;
        }
    }
    if (!known) throw UnknownEpoch("epoch " + std::to_string(epoch) + " was never held");
    std::erase_if(state.pending_deactivations,
                  [epoch](const auto& p) { return p.first == epoch; });
    return changed ? DeactivateStatus::Deactivated : DeactivateStatus::AlreadyInactive;
}

// --- MtdController --------------------------------------------------------------

MtdController::MtdController(int n_bits) : n_bits_(n_bits) {}

std::set<std::uint32_t> MtdController::used_values(NodeId router) const {
    std::set<std::uint32_t> used;
    auto it = routers_.find(router);
    if (it == routers_.end()) return used;
    for (const auto& [_, hop] : it->second.current) {
        used.insert(hop.incoming);
        if (hop.next_hop) used.insert(hop.outgoing);
    }
    used.insert(it->second.lingering.begin(), it->second.lingering.end());
    return used;
}

std::uint32_t MtdController::pick_fresh_value(const std::set<std::uint32_t>& used,
                                              RngStream& rng) const {
    const std::uint32_t space = 1u << n_bits_;
    std::vector<std::uint32_t> free;
    free.reserve(space > used.size() ? space - used.size() : 0);
    for (std::uint32_t v = 0; v < space; ++v) {
        if (!used.count(v)) free.push_back(v);
    }
    if (free.empty())
        throw ValueSpaceExhausted(std::to_string(space) + " values, all in use");
    return free[rng.uniform_u32(static_cast<std::uint32_t>(free.size()))];
}

void MtdController::record_hop(NodeId router, std::uint32_t flow_id, const Hop& hop) {
    routers_[router].current[flow_id] = hop;
}

MtdUpdate MtdController::full_table_update(NodeId router, std::uint64_t epoch,
                                           DeactivationPolicy policy) {
    MtdUpdate u;
    u.update_id = next_update_id_++;
    u.target_router = router;
    u.epoch = epoch;
    u.policy = policy;
    for (const auto& [flow_id, hop] : routers_.at(router).current) {
        (void)flow_id;
        InterpretationEntry e;
        e.incoming_value = hop.incoming;
        e.next_hop = hop.next_hop;
        e.outgoing_value = hop.next_hop ? hop.outgoing : hop.incoming;
        e.epoch = epoch;
        u.new_entries.push_back(e);
    }
    routers_.at(router).last_epoch = epoch;
    return u;
}

std::vector<MtdUpdate> MtdController::register_flow(Flow flow, RngStream& rng,
                                                    DeactivationPolicy policy) {
    if (flow.path.size() < 2) throw MalformedSpec("flow path needs at least two nodes");
    if (flows_.count(flow.id)) throw MalformedSpec("duplicate flow id");
    if (flow.values.empty()) flow.values.assign(flow.link_count(), kUnsetValue);
    if (flow.values.size() != flow.link_count())
        throw MalformedSpec("flow '" + flow.name + "' needs one value per link");

    // Assign unset values; each must be free at both adjacent routers,
    // including values claimed earlier in this same flow.
    std::map<NodeId, std::set<std::uint32_t>> claimed;
    for (std::size_t i = 0; i < flow.values.size(); ++i) {
        const NodeId receiver = flow.path[i + 1];
        std::set<std::uint32_t> used = used_values(receiver);
        used.insert(claimed[receiver].begin(), claimed[receiver].end());
        if (i >= 1) {
            const NodeId sender = flow.path[i];
            auto more = used_values(sender);
            used.insert(more.begin(), more.end());
            used.insert(claimed[sender].begin(), claimed[sender].end());
        }
        if (flow.values[i] == kUnsetValue) {
            flow.values[i] = pick_fresh_value(used, rng);
        } else if (flow.values[i] >= (1u << n_bits_)) {
            throw MalformedSpec("flow '" + flow.name + "' value does not fit n_bits");
        } else if (used.count(flow.values[i])) {
            throw MalformedSpec("flow '" + flow.name + "' value " +
                                std::to_string(flow.values[i]) + " collides at a router");
        }
        claimed[receiver].insert(flow.values[i]);
        if (i >= 1) claimed[flow.path[i]].insert(flow.values[i]);
    }

    for (std::size_t k = 1; k < flow.path.size(); ++k) {
        Hop hop;
        hop.incoming = flow.values[k - 1];
        if (k + 1 < flow.path.size()) {
            hop.next_hop = flow.path[k + 1];
            hop.outgoing = flow.values[k];
        }
        record_hop(flow.path[k], flow.id, hop);
    }

    const std::uint64_t epoch = next_epoch_++;
    std::vector<MtdUpdate> updates;
    for (std::size_t k = flow.path.size(); k-- > 1;) {
        updates.push_back(full_table_update(flow.path[k], epoch, policy));
    }
    flows_.emplace(flow.id, std::move(flow));
    return updates;
}

std::vector<MtdUpdate> MtdController::generate_update(
    std::uint32_t flow_id, std::vector<std::size_t> selection, RngStream& rng,
    DeactivationPolicy policy, const std::map<std::size_t, std::uint32_t>* pinned) {
    auto fit = flows_.find(flow_id);
    if (fit == flows_.end()) throw MalformedSpec("unknown flow id");
    Flow& flow = fit->second;
    if (flow.link_count() < 2)
        throw MalformedSpec("flow '" + flow.name + "' has no updatable inter-router link");

    if (selection.empty()) {
        for (std::size_t i = 1; i < flow.link_count(); ++i) selection.push_back(i);
    }
    std::sort(selection.begin(), selection.end());
    std::set<NodeId> affected;
    for (std::size_t i : selection) {
        if (i < 1 || i >= flow.link_count())
            throw MalformedSpec("link selection index out of range");
        const NodeId sender = flow.path[i];
        const NodeId receiver = flow.path[i + 1];

        std::set<std::uint32_t> used = used_values(sender);
        auto more = used_values(receiver);
        used.insert(more.begin(), more.end());

        std::uint32_t fresh;
        if (pinned && pinned->count(i)) {
            fresh = pinned->at(i);
            if (used.count(fresh))
                throw MalformedSpec("pinned value " + std::to_string(fresh) +
                                    " is already in use");
        } else {
            fresh = pick_fresh_value(used, rng);
        }

        const std::uint32_t old = flow.values[i];
        flow.values[i] = fresh;
        routers_[sender].lingering.insert(old);
        routers_[receiver].lingering.insert(old);
        routers_[sender].current[flow_id].outgoing = fresh;
        routers_[receiver].current[flow_id].incoming = fresh;
        affected.insert(sender);
        affected.insert(receiver);
    }

    const std::uint64_t epoch = next_epoch_++;
    std::vector<MtdUpdate> updates;
    for (std::size_t k = flow.path.size(); k-- > 1;) {
        if (affected.count(flow.path[k]))
            updates.push_back(full_table_update(flow.path[k], epoch, policy));
    }
    return updates;
}

void MtdController::confirm_deactivated(NodeId router, std::uint64_t below_epoch) {
    auto it = routers_.find(router);
    if (it == routers_.end()) return;
    if (it->second.last_epoch >= below_epoch) it->second.lingering.clear();
}

const Flow& MtdController::flow(std::uint32_t id) const {
    auto it = flows_.find(id);
    if (it == flows_.end()) throw MalformedSpec("unknown flow id");
    return it->second;
}

std::vector<std::uint32_t> MtdController::flow_ids() const {
    std::vector<std::uint32_t> ids;
    for (const auto& [id, _] : flows_) ids.push_back(id);
    return ids;
}

std::vector<std::uint32_t> MtdController::active_values(NodeId router) const {
    auto used = used_values(router);
    return {used.begin(), used.end()};
}

std::uint64_t MtdController::last_epoch(NodeId router) const {
    auto it = routers_.find(router);
    return it == routers_.end() ? 0 : it->second.last_epoch;
}

} // namespace omsim
