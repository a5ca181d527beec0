#include "pctsim/agent.hpp"

#include <algorithm>
#include <cmath>

#include "pctsim/errors.hpp"

namespace pctsim {

CoopLevel CoopLevel::from_string(std::string_view bits) {
    if (bits.size() != 4 || bits.find_first_not_of("01") != std::string_view::npos)
        throw ConfigError("cooperation level must be four 0/1 characters, e.g. 0110");
    CoopLevel c;
    c.roam = bits[0] == '1';
    c.arrived_stuck_backoff = bits[1] == '1';
    c.stuck_stuck_backoff = bits[2] == '1';
    c.mutual_access_gate = bits[3] == '1';
    return c;
}

CoopLevel CoopLevel::from_index(int i) {
    if (i < 0 || i > 15) throw ConfigError("cooperation index must be 0..15");
    CoopLevel c;
    c.roam = (i & 1) != 0;
    c.arrived_stuck_backoff = (i >> 1 & 1) != 0;
    c.stuck_stuck_backoff = (i >> 2 & 1) != 0;
    c.mutual_access_gate = (i >> 3 & 1) != 0;
    return c;
}

int CoopLevel::index() const {
    return (roam ? 1 : 0) | (arrived_stuck_backoff ? 2 : 0) |
           (stuck_stuck_backoff ? 4 : 0) | (mutual_access_gate ? 8 : 0);
}

std::string CoopLevel::to_string() const {
    std::string s(4, '0');
    s[0] = roam ? '1' : '0';
    s[1] = arrived_stuck_backoff ? '1' : '0';
    s[2] = stuck_stuck_backoff ? '1' : '0';
    s[3] = mutual_access_gate ? '1' : '0';
    return s;
}

void validate_params(const AgentParams& p) {
    if (!(p.gain > 0.0) || !(p.gain < 1.0)) throw ConfigError("gain must be in (0, 1)");
    if (!(p.max_step > 0.0) || !std::isfinite(p.max_step))
        throw ConfigError("max_step must be positive");
    if (p.backoff_ms <= 0) throw ConfigError("backoff_ms must be positive");
}

double control_step(double reference, double position, const AgentParams& p) {
    double step = p.gain * (reference - position);
    return std::clamp(step, -p.max_step, p.max_step);
}

Directive arbitrate(const StatusFlags& self, const StatusFlags& other,
                    const CoopLevel& coop, const AgentState& state) {
    if (state.mode == AgentMode::BackOff) return Directive::BackOff;
    if (state.mode == AgentMode::Roam) return Directive::RandomMove;
    if (coop.stuck_stuck_backoff && self.stuck && other.stuck) return Directive::BackOff;
    if (coop.arrived_stuck_backoff && self.arrived && other.stuck) return Directive::BackOff;
    if (self.target_known &&
        (!coop.mutual_access_gate || (self.access && other.access)))
        return Directive::ApproachTarget;
    if (coop.roam) return Directive::RandomMove;
    return Directive::Stop;
}

Directive solo_baseline(const StatusFlags& self, const CoopLevel& coop) {
    if (self.target_known) return Directive::ApproachTarget;
    if (coop.roam) return Directive::RandomMove;
    return Directive::Stop;
}

void begin_backoff(AgentState& st, const AgentParams& p, Rng& rng) {
    st.mode = AgentMode::BackOff;
    st.temp_reference = rng.uniform();
    st.mode_remaining_ms = p.backoff_ms;
}

void roam_reference(AgentState& st, const AgentParams& p, Rng& rng) {
    st.mode = AgentMode::Roam;
    st.temp_reference = rng.uniform();
    st.mode_remaining_ms = p.backoff_ms;
}

double agent_command(AgentState& st, Directive d, double position, double target,
                     double arrive_tol, const AgentParams& p, Rng& rng) {
    switch (d) {
        case Directive::Stop:
            return 0.0;
        case Directive::ApproachTarget:
            if (std::abs(target - position) <= arrive_tol) return 0.0;
            return control_step(target, position, p);
        case Directive::BackOff:
            if (st.mode != AgentMode::BackOff) begin_backoff(st, p, rng);
            return control_step(*st.temp_reference, position, p);
        case Directive::RandomMove:
            if (st.mode != AgentMode::Roam ||
                std::abs(*st.temp_reference - position) <= arrive_tol)
                roam_reference(st, p, rng);
            return control_step(*st.temp_reference, position, p);
    }
    return 0.0;
}

void agent_tick_timer(AgentState& st, int tick_ms) {
    if (st.mode == AgentMode::Normal) return;
    st.mode_remaining_ms -= tick_ms;
    if (st.mode_remaining_ms <= 0) {
        st.mode = AgentMode::Normal;
        st.temp_reference.reset();
        st.mode_remaining_ms = 0;
    }
}

}  // namespace pctsim
