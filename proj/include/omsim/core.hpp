#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "omsim/errors.hpp"

namespace omsim {

using SimTime = double; // simulated seconds

enum class NodeId : std::uint32_t {};
enum class LinkId : std::uint32_t {};

inline std::uint32_t index_of(NodeId id) { return static_cast<std::uint32_t>(id); }
inline std::uint32_t index_of(LinkId id) { return static_cast<std::uint32_t>(id); }

enum class NodeKind {
    Nocc,
    TtcCenter,
    Gateway,
    AccessSatellite,
    RelaySatellite,
    TargetSatellite,
    UserTerminal,
};

enum class LinkKind {
    TerrestrialWired,
    Feeder,
    Isl,
    Ttc,
    UserLink,
};

// Direction of a transmission over a link. Uplink is a -> b; scenario files
// list the ground-side endpoint as "a" by convention.
enum class LinkDir { Uplink, Downlink };

struct Node {
    NodeId id{};
    std::string name;
    NodeKind kind{};
    std::set<std::string> keyring; // key identifiers held by this node
};

struct Link {
    LinkId id{};
    std::string name;
    LinkKind kind{};
    NodeId a{};
    NodeId b{};
    double latency = 0.0; // simulated seconds
    bool eavesdroppable = false;
    double uplink_block_prob = 0.0;   // a -> b
    double downlink_block_prob = 0.0; // b -> a

    double block_prob(LinkDir dir) const {
        return dir == LinkDir::Uplink ? uplink_block_prob : downlink_block_prob;
    }
    NodeId other(NodeId n) const { return n == a ? b : a; }
};

// --- Frame fields -----------------------------------------------------------

inline constexpr std::uint16_t kSyncMarker = 0xEB90;

struct PhyField {
    std::uint16_t sync = kSyncMarker; // always cleartext
    std::uint8_t modcod = 0;
    bool crc_ok = true;
};

struct Plaintext {
    std::string payload;
};

// Possession-of-key encryption model: a node can open the payload iff it
// holds key_id; tampering clears auth_tag_valid.
struct SymbolicCiphertext {
    std::string key_id;
    std::string payload;
    bool auth_tag_valid = true;
};

using ContentField = std::variant<Plaintext, SymbolicCiphertext>;

inline bool is_ciphertext(const ContentField& c) {
    return std::holds_alternative<SymbolicCiphertext>(c);
}

// Instrumentation-only metadata; never visible to routing or adversaries.
struct FrameMeta {
    std::uint32_t flow_id = 0;
    SimTime created_at = 0.0;
    std::uint64_t frame_seq = 0;
};

struct Frame {
    PhyField phy;
    std::uint32_t routing = 0; // n-bit routing field
    ContentField content;
    FrameMeta meta;
};

// --- Topology ---------------------------------------------------------------

struct NodeSpec {
    std::string name;
    NodeKind kind{};
    std::set<std::string> keys;
};

struct LinkSpec {
    std::string name;
    LinkKind kind{};
    std::string a;
    std::string b;
    double latency = 0.0;
    std::optional<bool> eavesdroppable; // defaulted per link kind when unset
    double uplink_block_prob = 0.0;
    double downlink_block_prob = 0.0;
};

struct TopologySpec {
    int n_bits = 8;
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
};

class Topology {
public:
    int n_bits = 8;
    std::vector<Node> nodes;
    std::vector<Link> links;

    std::uint32_t value_count() const { return 1u << n_bits; }

    const Node& node(NodeId id) const { return nodes.at(index_of(id)); }
    const Link& link(LinkId id) const { return links.at(index_of(id)); }
    const std::vector<LinkId>& links_at(NodeId id) const { return adjacency_.at(index_of(id)); }

    std::optional<NodeId> node_by_name(const std::string& name) const;
    std::optional<LinkId> link_by_name(const std::string& name) const;

    // First link connecting u and v, by ascending LinkId.
    std::optional<LinkId> link_between(NodeId u, NodeId v) const;

    // The transmit direction when sending from `from` over `l`.
    LinkDir direction_from(const Link& l, NodeId from) const {
        return from == l.a ? LinkDir::Uplink : LinkDir::Downlink;
    }

    friend Topology build_topology(const TopologySpec& spec);

private:
    std::vector<std::vector<LinkId>> adjacency_;
};

// Validates and assembles a topology. NodeIds are assigned in listing order.
// Throws MalformedSpec on duplicate names, dangling link endpoints, empty
// node list, out-of-range probabilities or latencies.
Topology build_topology(const TopologySpec& spec);

// Shortest hop-count path from src to dst, inclusive. Ties are broken by the
// lexicographically smallest NodeId sequence. Throws NoPath when disconnected,
// MalformedSpec when an endpoint does not exist.
std::vector<NodeId> find_path(const Topology& topo, NodeId src, NodeId dst);

// --- Symbolic end-to-end encryption ------------------------------------------

enum class DecryptStatus { Ok, NoKey, AuthFailure };

struct DecryptOutcome {
    DecryptStatus status{};
    std::string payload; // set iff status == Ok

    bool ok() const { return status == DecryptStatus::Ok; }
};

ContentField symbolic_encrypt(const std::string& key_id, const std::string& payload);

// Succeeds iff the content is plaintext, or the node holds key_id and the
// authentication tag is intact.
DecryptOutcome symbolic_decrypt(const Node& node, const ContentField& content);

// Marks a ciphertext as tampered; plaintext content gains a failed CRC
// indication instead (modelled at frame level by callers).
void tamper(ContentField& content);

const char* to_string(NodeKind k);
const char* to_string(LinkKind k);
std::optional<NodeKind> node_kind_from_string(const std::string& s);
std::optional<LinkKind> link_kind_from_string(const std::string& s);

} // namespace omsim
