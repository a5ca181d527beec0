#pragma once

#include <utility>

#include "pctsim/agent.hpp"
#include "pctsim/geometry.hpp"

namespace pctsim {

// Snapshot of one agent's transmissible flags, taken before either agent
// moves in the tick it is delivered.
struct StatusMessage {
    Axis sender = Axis::X;
    long tick = 0;
    bool stuck = false;
    bool access = false;
    bool arrived = false;
};

// Synchronous broadcast: each agent receives the other's same-tick snapshot.
// Returns (message from X, message from Y).
std::pair<StatusMessage, StatusMessage> exchange(long tick, const StatusFlags& flags_x,
                                                 const StatusFlags& flags_y);

struct CommFiring {
    bool x = false;
    bool y = false;
};

// Counts, per agent, ticks on which an enabled cooperation rule consumed the
// partner's flags and changed the agent's directive relative to what it
// would have done alone.
class CommLedger {
public:
    void record(long /*tick*/, CommFiring fired) {
        total_ += 1;
        if (fired.x) x_ += 1;
        if (fired.y) y_ += 1;
    }
    long total_ticks() const { return total_; }
    long ticks_x() const { return x_; }
    long ticks_y() const { return y_; }
    double pct_x() const { return total_ == 0 ? 0.0 : 100.0 * static_cast<double>(x_) / total_; }
    double pct_y() const { return total_ == 0 ? 0.0 : 100.0 * static_cast<double>(y_) / total_; }

private:
    long total_ = 0;
    long x_ = 0;
    long y_ = 0;
};

// Whether the partner's message drove this agent's behaviour this tick. The
// back-off rules (c, d) consume the partner's stuck flag for as long as the
// condition holds; the access gate (e) consumes a transmission only when the
// partner's access is observed to drop while this agent still has access.
// In all cases the tick counts only if the actual directive differs from the
// agent's solo baseline.
bool communication_fired(const StatusFlags& self, const StatusMessage& other,
                         const CoopLevel& coop, Directive actual, Directive baseline,
                         bool prev_other_access);

}  // namespace pctsim
