#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pctsim/rng.hpp"

namespace pctsim {

// One cooperation-rule toggle per letter of the four-bit level string
// "bcde". Bit a (approach a known target) is always on.
struct CoopLevel {
    bool roam = false;               // b: move randomly instead of stopping
    bool arrived_stuck_backoff = false;  // c: back off when arrived and partner stuck
    bool stuck_stuck_backoff = false;    // d: back off when both stuck
    bool mutual_access_gate = false;     // e: approach only while both have access

    // "0110" -> roam=0, arrived_stuck_backoff=1, stuck_stuck_backoff=1, gate=0.
    static CoopLevel from_string(std::string_view bits);
    // Index i in 0..15 maps to bits b=i&1, c=i>>1&1, d=i>>2&1, e=i>>3&1, so
    // index order is 0000, 1000, 0100, 1100, 0010, ...
    static CoopLevel from_index(int i);
    int index() const;
    std::string to_string() const;
    friend bool operator==(const CoopLevel&, const CoopLevel&) = default;
};

struct AgentParams {
    double gain = 0.01;        // in (0, 1)
    double max_step = 0.005;   // world units per tick
    int backoff_ms = 1000;     // hold time for back-off and roam references
    bool target_view = true;   // whether this agent is told the target
    friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

struct StatusFlags {
    bool stuck = false;
    bool collided_edge = false;
    bool access = false;
    bool arrived = false;
    bool target_known = false;
    friend bool operator==(const StatusFlags&, const StatusFlags&) = default;
};

enum class Directive { Stop, ApproachTarget, BackOff, RandomMove };
enum class AgentMode { Normal, BackOff, Roam };

struct AgentState {
    AgentMode mode = AgentMode::Normal;
    std::optional<double> temp_reference;  // set iff mode != Normal
    int mode_remaining_ms = 0;
};

// Throws ConfigError unless gain is in (0,1), max_step is positive and
// backoff_ms is a positive duration.
void validate_params(const AgentParams& p);

// Proportional step toward a reference, clamped to +-max_step.
double control_step(double reference, double position, const AgentParams& p);

// Picks the directive for one axis agent. Precedence:
//   1. an active back-off or roam runs to completion,
//   2. both stuck        -> back off       (bit d),
//   3. arrived + partner stuck -> back off (bit c),
//   4. target known -> approach, unless the mutual-access gate (bit e) is on
//      and either side lacks access (a failed gate falls through),
//   5. roaming enabled -> random move      (bit b),
//   6. stop.
Directive arbitrate(const StatusFlags& self, const StatusFlags& other,
                    const CoopLevel& coop, const AgentState& state);

// Directive the agent would pick with every cooperation rule that consumes
// the partner's flags disabled (only target approach and own-flag roaming).
Directive solo_baseline(const StatusFlags& self, const CoopLevel& coop);

// Enters back-off: uniform temporary reference, timer = backoff_ms.
void begin_backoff(AgentState& st, const AgentParams& p, Rng& rng);
// Enters (or re-rolls) a roam reference with the same hold time.
void roam_reference(AgentState& st, const AgentParams& p, Rng& rng);

// Applies a directive: manages mode entry/re-roll and returns this tick's
// movement command. arrive_tol doubles as the roam-reference arrival check.
double agent_command(AgentState& st, Directive d, double position, double target,
                     double arrive_tol, const AgentParams& p, Rng& rng);

// Advances the mode timer by one tick; clears the mode on expiry.
void agent_tick_timer(AgentState& st, int tick_ms);

}  // namespace pctsim
