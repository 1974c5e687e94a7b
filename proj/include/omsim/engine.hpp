#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "omsim/core.hpp"
#include "omsim/rng.hpp"

namespace omsim {

// Trace vocabulary shared by all protocol handlers. Rows are what golden-trace
// tests and the trace CSV dump compare.
enum class MsgKind {
    FrameEmit,
    FrameForward,
    FrameLocalDeliver,
    FrameDrop,
    Blocked,
    Inject,
    UpdateSend,
    UpdateApply,
    UpdateStale,
    UpdateAck,
    DeactivateSend,
    EpochDeactivate,
    ConfigWarning,
    OpCommand,
    OpAck,
    FallbackCommand,
    FallbackRejected,
    StatusReport,
    Cancellation,
    CancellationIgnored,
    WindowOpen,
    WindowClosed,
    WindowExpiry,
    ModeChange,
    SmdDetected,
    FailureInjected,
    Timer,
};

const char* to_string(MsgKind k);

struct TraceRow {
    SimTime time = 0.0;
    std::string node;
    MsgKind kind{};
    std::string detail;

    bool operator==(const TraceRow&) const = default;
};

// Deterministic discrete-event loop. Events fire in (fire_time, insertion
// order); the clock never goes backwards. One engine instance is
// single-threaded; run independent instances for parallel Monte Carlo trials.
class Engine {
public:
    using Action = std::function<void()>;

    struct Ticket {
        std::uint64_t id = 0;
    };

    SimTime now() const { return now_; }

    // Throws PastTime if fire_time < now(). Equal-time events fire in
    // scheduling order.
    Ticket schedule(SimTime fire_time, Action action);

    // True iff the event was still pending (not fired, not yet cancelled).
    bool cancel(Ticket t);

    // Processes all events with fire_time <= t_end, then advances the clock
    // to t_end.
    void run_until(SimTime t_end);

    // One transmission attempt over a link: with probability
    // 1 - block_prob the delivery fires after `latency`; otherwise the
    // message is lost and the caller records the Blocked outcome. Each
    // attempt draws independently (correlated jamming would plug in here).
    bool transmit(double latency, double block_prob, RngStream& rng, Action on_delivery);

    void log(const std::string& node, MsgKind kind, std::string detail = {});

    const std::vector<TraceRow>& trace() const { return trace_; }

private:
    struct Scheduled {
        SimTime t;
        std::uint64_t seq;
        Action action;
    };
    struct Later {
        bool operator()(const Scheduled& x, const Scheduled& y) const {
            if (x.t != y.t) return x.t > y.t;
            return x.seq > y.seq;
        }
    };

    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 1;
    std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue_;
    std::unordered_set<std::uint64_t> pending_;
    std::vector<TraceRow> trace_;
};

// Transmission from `from` over `l`, using the link's latency and the block
// probability of the travel direction.
bool transmit_over(Engine& eng, const Topology& topo, const Link& l, NodeId from, RngStream& rng,
                   Engine::Action on_delivery);

// Renders a trace as CSV rows `time,node,kind,detail` (header included).
std::string trace_to_csv(const std::vector<TraceRow>& trace);

// Stable scalar formatting used in all CSV output and trace details.
std::string format_double(double v);

// Routing-field values are printed as zero-padded hex wide enough for n bits.
std::string format_value(std::uint32_t value, int n_bits);

} // namespace omsim
