#include "omsim/engine.hpp"

#include <cstdio>

namespace omsim {

const char* to_string(MsgKind k) {
    switch (k) {
    case MsgKind::FrameEmit: return "frame_emit";
    case MsgKind::FrameForward: return "frame_forward";
    case MsgKind::FrameLocalDeliver: return "frame_deliver";
    case MsgKind::FrameDrop: return "frame_drop";
    case MsgKind::Blocked: return "blocked";
    case MsgKind::Inject: return "inject";
    case MsgKind::UpdateSend: return "update_send";
    case MsgKind::UpdateApply: return "update_apply";
    case MsgKind::UpdateStale: return "update_stale";
    case MsgKind::UpdateAck: return "update_ack";
    case MsgKind::DeactivateSend: return "deactivate_send";
    case MsgKind::EpochDeactivate: return "epoch_deactivate";
    case MsgKind::ConfigWarning: return "config_warning";
    case MsgKind::OpCommand: return "op_command";
    case MsgKind::OpAck: return "op_ack";
    case MsgKind::FallbackCommand: return "fallback_command";
    case MsgKind::FallbackRejected: return "fallback_rejected";
    case MsgKind::StatusReport: return "status_report";
    case MsgKind::Cancellation: return "cancellation";
    case MsgKind::CancellationIgnored: return "cancellation_ignored";
    case MsgKind::WindowOpen: return "window_open";
    case MsgKind::WindowClosed: return "window_closed";
    case MsgKind::WindowExpiry: return "window_expiry";
    case MsgKind::ModeChange: return "mode_change";
    case MsgKind::SmdDetected: return "smd_detected";
    case MsgKind::FailureInjected: return "failure_injected";
    case MsgKind::Timer: return "timer";
    }
    return "?";
}

Engine::Ticket Engine::schedule(SimTime fire_time, Action action) {
    if (fire_time < now_)
        throw PastTime("schedule at " + format_double(fire_time) + " before clock " +
                       format_double(now_));
    const std::uint64_t seq = next_seq_++;
    queue_.push(Scheduled{fire_time, seq, std::move(action)});
    pending_.insert(seq);
    return Ticket{seq};
}

bool Engine::cancel(Ticket t) {
    return pending_.erase(t.id) > 0;
}

void Engine::run_until(SimTime t_end) {
    while (!queue_.empty() && queue_.top().t <= t_end) {
        Scheduled ev = queue_.top();
        queue_.pop();
        if (!pending_.erase(ev.seq)) continue; // cancelled
        now_ = ev.t;
        ev.action();
    }
    if (t_end > now_) now_ = t_end;
}

bool Engine::transmit(double latency, double block_prob, RngStream& rng, Action on_delivery) {
    if (rng.bernoulli(block_prob)) return false;
    schedule(now_ + latency, std::move(on_delivery));
    return true;
}

void Engine::log(const std::string& node, MsgKind kind, std::string detail) {
    trace_.push_back(TraceRow{now_, node, kind, std::move(detail)});
}

bool transmit_over(Engine& eng, const Topology& topo, const Link& l, NodeId from, RngStream& rng,
                   Engine::Action on_delivery) {
    const LinkDir dir = topo.direction_from(l, from);
    return eng.transmit(l.latency, l.block_prob(dir), rng, std::move(on_delivery));
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "time,node,kind,detail\n";
    for (const TraceRow& row : trace) {
        out += format_double(row.time);
        out += ',';
        out += row.node;
        out += ',';
        out += to_string(row.kind);
        out += ',';
        out += row.detail;
        out += '\n';
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_value(std::uint32_t value, int n_bits) {
    const int digits = (n_bits + 3) / 4;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0x%0*x", digits, value);
    return buf;
}

} // namespace omsim
