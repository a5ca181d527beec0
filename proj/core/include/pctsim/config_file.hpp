#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pctsim/environment.hpp"
#include "pctsim/experiment.hpp"

namespace pctsim {

// In-memory form of the INI-style configuration document. Optional position
// fields stay empty when the file does not pin them (random worlds).
struct FileConfig {
    std::optional<Vec2> target;
    std::optional<Vec2> vehicle_start;
    std::vector<Barrier> barriers;
    double target_tolerance = 0.02;
    double vehicle_radius = 0.01;
    CoopLevel coop_x;
    CoopLevel coop_y;
    AgentParams params_x;
    AgentParams params_y;
    int nruns = 200;
    int nbarriers = 3;
    BarrierMode barrier_mode = BarrierMode::RandomPerRun;
    std::uint64_t master_seed = 1;
    bool randomize_start_target = true;
    int tick_ms = 10;
    int cap_ms = 30000;
    friend bool operator==(const FileConfig&, const FileConfig&) = default;
};

struct ParseIssue {
    int line = 0;  // 1-based; 0 for document-level problems
    std::string message;
};

struct ConfigParse {
    std::optional<FileConfig> config;  // present iff issues is empty
    std::vector<ParseIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Sections: [world] (target, vehicle_start, repeated barrier rows as
// x,y,rotation,length, tolerances), [agents] (coop/gain/max_step/backoff_ms/
// target_view per agent), [experiment] (nruns, nbarriers, barrier_mode,
// master_seed, randomize_start_target, tick_ms, cap_ms). Unknown sections
// and keys are rejected; every problem is reported with its line.
ConfigParse parse_config(std::string_view text);

// Same, but throws ConfigError with all issues joined.
FileConfig parse_config_or_throw(std::string_view text);

// Canonical document: fixed section and key order, full double precision.
// parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const FileConfig& c);

}  // namespace pctsim
