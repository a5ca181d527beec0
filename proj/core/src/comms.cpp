#include "pctsim/comms.hpp"

namespace pctsim {

std::pair<StatusMessage, StatusMessage> exchange(long tick, const StatusFlags& flags_x,
                                                 const StatusFlags& flags_y) {
    StatusMessage from_x{Axis::X, tick, flags_x.stuck, flags_x.access, flags_x.arrived};
    StatusMessage from_y{Axis::Y, tick, flags_y.stuck, flags_y.access, flags_y.arrived};
    return {from_x, from_y};
}

bool communication_fired(const StatusFlags& self, const StatusMessage& other,
                         const CoopLevel& coop, Directive actual, Directive baseline,
                         bool prev_other_access) {
    if (actual == baseline) return false;
    if (coop.stuck_stuck_backoff && self.stuck && other.stuck) return true;
    if (coop.arrived_stuck_backoff && self.arrived && other.stuck) return true;
    if (coop.mutual_access_gate && self.target_known && self.access &&
        !other.access && prev_other_access)
        return true;
    return false;
}

}  // namespace pctsim
