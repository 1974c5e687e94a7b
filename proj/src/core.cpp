#include "omsim/core.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace omsim {

std::optional<NodeId> Topology::node_by_name(const std::string& name) const {
    for (const auto& n : nodes) {
        if (n.name == name) return n.id;
    }
    return std::nullopt;
}

std::optional<LinkId> Topology::link_by_name(const std::string& name) const {
    for (const auto& l : links) {
        if (l.name == name) return l.id;
    }
    return std::nullopt;
}

std::optional<LinkId> Topology::link_between(NodeId u, NodeId v) const {
    for (LinkId lid : links_at(u)) {
        const Link& l = link(lid);
        if ((l.a == u && l.b == v) || (l.a == v && l.b == u)) return lid;
    }
    return std::nullopt;
}

static bool default_eavesdroppable(LinkKind kind) {
    switch (kind) {
    case LinkKind::Isl:
        // Intercepting ISLs requires defeating narrow-beam pointing; treated
        // as out of reach for the eavesdropper.
        return false;
    case LinkKind::TerrestrialWired:
    case LinkKind::Feeder:
    case LinkKind::Ttc:
    case LinkKind::UserLink:
        return true;
    }
    return true;
}

Topology build_topology(const TopologySpec& spec) {
    if (spec.nodes.empty()) throw MalformedSpec("empty node list");
    if (spec.n_bits < 1 || spec.n_bits > 30)
        throw MalformedSpec("n_bits must be in [1, 30], got " + std::to_string(spec.n_bits));

    Topology topo;
    topo.n_bits = spec.n_bits;

    std::map<std::string, NodeId> by_name;
    int nocc_count = 0;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const NodeSpec& ns = spec.nodes[i];
        if (ns.name.empty()) throw MalformedSpec("node with empty name");
        if (by_name.count(ns.name)) throw MalformedSpec("duplicate node name '" + ns.name + "'");
        Node n;
        n.id = NodeId{static_cast<std::uint32_t>(i)};
        n.name = ns.name;
        n.kind = ns.kind;
        n.keyring = ns.keys;
        if (n.kind == NodeKind::Nocc) ++nocc_count;
        by_name.emplace(n.name, n.id);
        topo.nodes.push_back(std::move(n));
    }
    if (nocc_count != 1)
        throw MalformedSpec("topology must contain exactly one NOCC, got " +
                            std::to_string(nocc_count));

    topo.adjacency_.assign(topo.nodes.size(), {});
    std::map<std::string, LinkId> link_names;
    for (std::size_t i = 0; i < spec.links.size(); ++i) {
        const LinkSpec& ls = spec.links[i];
        if (ls.name.empty()) throw MalformedSpec("link with empty name");
        if (link_names.count(ls.name)) throw MalformedSpec("duplicate link name '" + ls.name + "'");
        auto a = by_name.find(ls.a);
        auto b = by_name.find(ls.b);
        if (a == by_name.end())
            throw MalformedSpec("link '" + ls.name + "' references unknown node '" + ls.a + "'");
        if (b == by_name.end())
            throw MalformedSpec("link '" + ls.name + "' references unknown node '" + ls.b + "'");
        if (ls.a == ls.b) throw MalformedSpec("link '" + ls.name + "' is a self-loop");
        if (!(ls.latency >= 0.0))
            throw MalformedSpec("link '" + ls.name + "' has negative latency");
        for (double p : {ls.uplink_block_prob, ls.downlink_block_prob}) {
            if (!(p >= 0.0 && p <= 1.0))
                throw MalformedSpec("link '" + ls.name + "' block probability out of [0,1]");
        }
        Link l;
        l.id = LinkId{static_cast<std::uint32_t>(i)};
        l.name = ls.name;
        l.kind = ls.kind;
        l.a = a->second;
        l.b = b->second;
        l.latency = ls.latency;
        l.eavesdroppable = ls.eavesdroppable.value_or(default_eavesdroppable(ls.kind));
        l.uplink_block_prob = ls.uplink_block_prob;
        l.downlink_block_prob = ls.downlink_block_prob;
        link_names.emplace(l.name, l.id);
        topo.adjacency_[index_of(l.a)].push_back(l.id);
        topo.adjacency_[index_of(l.b)].push_back(l.id);
        topo.links.push_back(std::move(l));
    }
    for (auto& adj : topo.adjacency_) std::sort(adj.begin(), adj.end());
    return topo;
}

std::vector<NodeId> find_path(const Topology& topo, NodeId src, NodeId dst) {
    const std::size_t n = topo.nodes.size();
    if (index_of(src) >= n || index_of(dst) >= n)
        throw MalformedSpec("find_path: endpoint does not exist");
    if (src == dst) return {src};

    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    auto bfs = [&](NodeId start) {
        std::vector<std::uint32_t> dist(n, kInf);
        std::deque<NodeId> queue{start};
        dist[index_of(start)] = 0;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (LinkId lid : topo.links_at(u)) {
                NodeId v = topo.link(lid).other(u);
                if (dist[index_of(v)] == kInf) {
                    dist[index_of(v)] = dist[index_of(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        return dist;
    };

    const auto d_src = bfs(src);
    const auto d_dst = bfs(dst);
    if (d_src[index_of(dst)] == kInf)
        throw NoPath(topo.node(src).name + " -> " + topo.node(dst).name);

    // Greedy walk over shortest-path DAG edges picking the smallest next
    // NodeId yields the lexicographically smallest node sequence.
    std::vector<NodeId> path{src};
    NodeId cur = src;
    while (cur != dst) {
        std::optional<NodeId> best;
        for (LinkId lid : topo.links_at(cur)) {
            NodeId v = topo.link(lid).other(cur);
            if (d_src[index_of(v)] == d_src[index_of(cur)] + 1 &&
                d_dst[index_of(v)] + d_src[index_of(v)] == d_src[index_of(dst)]) {
                if (!best || v < *best) best = v;
            }
        }
        cur = *best;
        path.push_back(cur);
    }
    return path;
}

ContentField symbolic_encrypt(const std::string& key_id, const std::string& payload) {
    return SymbolicCiphertext{key_id, payload, true};
}

DecryptOutcome symbolic_decrypt(const Node& node, const ContentField& content) {
    if (const auto* pt = std::get_if<Plaintext>(&content)) {
        return {DecryptStatus::Ok, pt->payload};
    }
    const auto& ct = std::get<SymbolicCiphertext>(content);
    if (!node.keyring.count(ct.key_id)) return {DecryptStatus::NoKey, {}};
    if (!ct.auth_tag_valid) return {DecryptStatus::AuthFailure, {}};
    return {DecryptStatus::Ok, ct.payload};
}

void tamper(ContentField& content) {
    if (auto* ct = std::get_if<SymbolicCiphertext>(&content)) {
        ct->auth_tag_valid = false;
    }
}

const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Nocc: return "nocc";
    case NodeKind::TtcCenter: return "ttc_center";
    case NodeKind::Gateway: return "gateway";
    case NodeKind::AccessSatellite: return "access_satellite";
    case NodeKind::RelaySatellite: return "relay_satellite";
    case NodeKind::TargetSatellite: return "target_satellite";
    case NodeKind::UserTerminal: return "user_terminal";
    }
    return "?";
}

const char* to_string(LinkKind k) {
    switch (k) {
    case LinkKind::TerrestrialWired: return "terrestrial";
    case LinkKind::Feeder: return "feeder";
    case LinkKind::Isl: return "isl";
    case LinkKind::Ttc: return "ttc";
    case LinkKind::UserLink: return "user";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(const std::string& s) {
    for (NodeKind k : {NodeKind::Nocc, NodeKind::TtcCenter, NodeKind::Gateway,
                       NodeKind::AccessSatellite, NodeKind::RelaySatellite,
                       NodeKind::TargetSatellite, NodeKind::UserTerminal}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<LinkKind> link_kind_from_string(const std::string& s) {
    for (LinkKind k : {LinkKind::TerrestrialWired, LinkKind::Feeder, LinkKind::Isl, LinkKind::Ttc,
                       LinkKind::UserLink}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

} // namespace omsim
