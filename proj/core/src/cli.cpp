#include "pctsim/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pctsim/config_file.hpp"
#include "pctsim/csv.hpp"
#include "pctsim/experiment.hpp"

namespace pctsim {

namespace {

struct Opts {
    std::optional<std::string> config_path;
    std::optional<std::string> target;
    std::optional<std::string> vehicle_start;
    std::vector<std::string> barrier_rows;
    std::optional<double> target_tolerance;
    std::optional<double> vehicle_radius;
    std::optional<std::string> coop_x;
    std::optional<std::string> coop_y;
    std::optional<double> gain_x;
    std::optional<double> gain_y;
    std::optional<double> max_step_x;
    std::optional<double> max_step_y;
    std::optional<int> backoff_ms_x;
    std::optional<int> backoff_ms_y;
    std::optional<bool> target_view_x;
    std::optional<bool> target_view_y;
    std::optional<int> nruns;
    std::optional<int> nbarriers;
    std::optional<std::string> barrier_mode;
    std::optional<bool> randomize;
    std::optional<std::uint64_t> seed;
    std::optional<int> tick_ms;
    std::optional<int> cap_ms;
    std::optional<int> threads;
    std::optional<std::string> out_path;
    std::optional<std::string> trace_path;
    std::string pair_a = "0110+0110";
    std::string pair_b = "1111+0010";
};

double parse_double_flag(const std::string& v, const char* flag) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(std::string(flag) + ": expected a finite number, got '" + v + "'");
    }
}

Vec2 parse_vec2_flag(const std::string& v, const char* flag) {
    size_t comma = v.find(',');
    if (comma == std::string::npos || v.find(',', comma + 1) != std::string::npos)
        throw ConfigError(std::string(flag) + ": expected x,y");
    Vec2 p{parse_double_flag(v.substr(0, comma), flag),
           parse_double_flag(v.substr(comma + 1), flag)};
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
        throw ConfigError(std::string(flag) + ": coordinates must be in [0,1]");
    return p;
}

Barrier parse_barrier_flag(const std::string& v) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = v.find(',', start);
        if (pos == std::string::npos) {
            parts.push_back(v.substr(start));
            break;
        }
        parts.push_back(v.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts.size() != 4) throw ConfigError("--barrier: expected x,y,rotation,length");
    Barrier b;
    b.center = {parse_double_flag(parts[0], "--barrier"), parse_double_flag(parts[1], "--barrier")};
    b.rotation = parse_double_flag(parts[2], "--barrier");
    b.length = parse_double_flag(parts[3], "--barrier");
    if (b.center.x < 0.0 || b.center.x > 1.0 || b.center.y < 0.0 || b.center.y > 1.0)
        throw ConfigError("--barrier: center must be in the unit square");
    if (b.rotation < 0.0 || b.rotation >= std::numbers::pi)
        throw ConfigError("--barrier: rotation must be in [0, pi)");
    if (b.length <= 0.0 || b.length > 1.0)
        throw ConfigError("--barrier: length must be in (0, 1]");
    return b;
}

CoopPair parse_pair_flag(const std::string& v, const char* flag) {
    size_t plus = v.find('+');
    if (plus == std::string::npos)
        throw ConfigError(std::string(flag) + ": expected XBITS+YBITS, e.g. 0110+0010");
    try {
        return {CoopLevel::from_string(v.substr(0, plus)),
                CoopLevel::from_string(v.substr(plus + 1))};
    } catch (const ConfigError&) {
        throw ConfigError(std::string(flag) + ": expected XBITS+YBITS, e.g. 0110+0010");
    }
}

FileConfig load_config(const Opts& o) {
    FileConfig f;
    if (o.config_path) {
        std::ifstream in(*o.config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot read config file: " + *o.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        f = parse_config_or_throw(text.str());
    }
    if (o.target) f.target = parse_vec2_flag(*o.target, "--target");
    if (o.vehicle_start) f.vehicle_start = parse_vec2_flag(*o.vehicle_start, "--vehicle-start");
    if (!o.barrier_rows.empty()) {
        f.barriers.clear();
        for (const std::string& row : o.barrier_rows) {
            if (f.barriers.size() >= 3) throw ConfigError("--barrier: at most 3 barriers");
            f.barriers.push_back(parse_barrier_flag(row));
        }
    }
    if (o.target_tolerance) {
        if (*o.target_tolerance <= 0.0 || *o.target_tolerance >= 0.5)
            throw ConfigError("--target-tolerance: must be in (0, 0.5)");
        f.target_tolerance = *o.target_tolerance;
    }
    if (o.vehicle_radius) {
        if (*o.vehicle_radius <= 0.0 || *o.vehicle_radius >= 0.5)
            throw ConfigError("--vehicle-radius: must be in (0, 0.5)");
        f.vehicle_radius = *o.vehicle_radius;
    }
    if (o.coop_x) f.coop_x = CoopLevel::from_string(*o.coop_x);
    if (o.coop_y) f.coop_y = CoopLevel::from_string(*o.coop_y);
    auto set_gain = [](AgentParams& p, double g, const char* flag) {
        if (g <= 0.0 || g >= 1.0) throw ConfigError(std::string(flag) + ": gain must be in (0, 1)");
        p.gain = g;
    };
    if (o.gain_x) set_gain(f.params_x, *o.gain_x, "--gain-x");
    if (o.gain_y) set_gain(f.params_y, *o.gain_y, "--gain-y");
    auto set_step = [](AgentParams& p, double s, const char* flag) {
        if (s <= 0.0 || s > 0.5)
            throw ConfigError(std::string(flag) + ": max_step must be in (0, 0.5]");
        p.max_step = s;
    };
    if (o.max_step_x) set_step(f.params_x, *o.max_step_x, "--max-step-x");
    if (o.max_step_y) set_step(f.params_y, *o.max_step_y, "--max-step-y");
    auto set_backoff = [](AgentParams& p, int ms, const char* flag) {
        if (ms <= 0) throw ConfigError(std::string(flag) + ": backoff_ms must be positive");
        p.backoff_ms = ms;
    };
    if (o.backoff_ms_x) set_backoff(f.params_x, *o.backoff_ms_x, "--backoff-ms-x");
    if (o.backoff_ms_y) set_backoff(f.params_y, *o.backoff_ms_y, "--backoff-ms-y");
    if (o.target_view_x) f.params_x.target_view = *o.target_view_x;
    if (o.target_view_y) f.params_y.target_view = *o.target_view_y;
    if (o.nruns) {
        if (*o.nruns < 1) throw ConfigError("--nruns: must be >= 1");
        f.nruns = *o.nruns;
    }
    if (o.nbarriers) {
        if (*o.nbarriers < 0 || *o.nbarriers > 3) throw ConfigError("--barriers: must be in 0..3");
        f.nbarriers = *o.nbarriers;
    }
    if (o.barrier_mode) {
        if (*o.barrier_mode == "fixed")
            f.barrier_mode = BarrierMode::Fixed;
        else if (*o.barrier_mode == "random_per_run")
            f.barrier_mode = BarrierMode::RandomPerRun;
        else
            throw ConfigError("--barrier-mode: expected fixed or random_per_run");
    }
    if (o.randomize) f.randomize_start_target = *o.randomize;
    if (o.seed) f.master_seed = *o.seed;
    if (o.tick_ms) {
        if (*o.tick_ms < 1) throw ConfigError("--tick-ms: must be >= 1");
        f.tick_ms = *o.tick_ms;
    }
    if (o.cap_ms) {
        if (*o.cap_ms < 1) throw ConfigError("--cap-ms: must be >= 1");
        f.cap_ms = *o.cap_ms;
    }
    if (f.cap_ms % f.tick_ms != 0) throw ConfigError("cap_ms must be a multiple of tick_ms");
    return f;
}

ExperimentConfig to_experiment(const FileConfig& f, const Opts& o) {
    ExperimentConfig e;
    e.nruns = f.nruns;
    e.nbarriers = f.nbarriers;
    e.barrier_mode = f.barrier_mode;
    e.base_world.target_tolerance = f.target_tolerance;
    e.base_world.vehicle_radius = f.vehicle_radius;
    e.base_world.barriers = f.barriers;
    if (f.target) e.base_world.target = *f.target;
    if (f.vehicle_start) e.base_world.vehicle_start = *f.vehicle_start;
    e.randomize_start_target = f.randomize_start_target;
    e.master_seed = f.master_seed;
    e.params_x = f.params_x;
    e.params_y = f.params_y;
    e.tick_ms = f.tick_ms;
    e.cap_ms = f.cap_ms;
    if (o.threads) {
        if (*o.threads < 1) throw ConfigError("--threads: must be >= 1");
        e.threads = *o.threads;
    }
    return e;
}

WorldConfig fixed_world(const FileConfig& f, const char* what) {
    if (!f.target || !f.vehicle_start)
        throw ConfigError(std::string(what) +
                          " needs target and vehicle_start (config file or flags)");
    WorldConfig w;
    w.target = *f.target;
    w.vehicle_start = *f.vehicle_start;
    w.barriers = f.barriers;
    w.target_tolerance = f.target_tolerance;
    w.vehicle_radius = f.vehicle_radius;
    return w;
}

void write_output(const Opts& o, const std::string& text, std::ostream& out) {
    if (!o.out_path) {
        out << text;
        return;
    }
    std::ofstream file(*o.out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + *o.out_path);
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("failed writing output file: " + *o.out_path);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + path);
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("failed writing output file: " + path);
}

void add_config_flag(CLI::App* cmd, Opts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (INI-style)");
    cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
}

void add_world_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--target", o.target, "target position x,y");
    cmd->add_option("--vehicle-start", o.vehicle_start, "vehicle start position x,y");
    cmd->add_option("--barrier", o.barrier_rows,
                    "barrier as x,y,rotation,length (repeatable, up to 3)");
    cmd->add_option("--target-tolerance", o.target_tolerance, "per-axis arrival tolerance");
    cmd->add_option("--vehicle-radius", o.vehicle_radius, "vehicle radius");
}

void add_agent_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--coop-x", o.coop_x, "X agent cooperation bits, e.g. 0110");
    cmd->add_option("--coop-y", o.coop_y, "Y agent cooperation bits");
    cmd->add_option("--gain-x", o.gain_x, "X agent loop gain (0,1)");
    cmd->add_option("--gain-y", o.gain_y, "Y agent loop gain (0,1)");
    cmd->add_option("--max-step-x", o.max_step_x, "X agent per-tick step limit");
    cmd->add_option("--max-step-y", o.max_step_y, "Y agent per-tick step limit");
    cmd->add_option("--backoff-ms-x", o.backoff_ms_x, "X agent back-off hold time");
    cmd->add_option("--backoff-ms-y", o.backoff_ms_y, "Y agent back-off hold time");
    cmd->add_option("--target-view-x", o.target_view_x, "whether X knows the target");
    cmd->add_option("--target-view-y", o.target_view_y, "whether Y knows the target");
}

void add_time_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--tick-ms", o.tick_ms, "simulated tick duration");
    cmd->add_option("--cap-ms", o.cap_ms, "run cap (DNF beyond this)");
}

void add_batch_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--nruns", o.nruns, "number of runs");
    cmd->add_option("--barriers,--nbarriers", o.nbarriers, "random barrier count 0..3");
    cmd->add_option("--barrier-mode", o.barrier_mode, "fixed | random_per_run");
    cmd->add_option("--randomize-start-target", o.randomize,
                    "redraw start/target per run in fixed mode");
    cmd->add_option("--threads", o.threads, "worker threads");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-agent cooperative navigation simulator"};
    app.require_subcommand(1);
    Opts o;

    CLI::App* c_run = app.add_subcommand("run", "run one simulation, emit a one-row CSV");
    add_config_flag(c_run, o);
    add_world_flags(c_run, o);
    add_agent_flags(c_run, o);
    add_time_flags(c_run, o);
    c_run->add_option("--seed", o.seed, "run seed");
    c_run->add_option("--trace", o.trace_path, "write per-tick telemetry CSV here");

    CLI::App* c_batch = app.add_subcommand("batch", "run a batch for one cooperation pair");
    CLI::App* c_matched = app.add_subcommand("sweep-matched", "16 matched cooperation levels");
    CLI::App* c_full = app.add_subcommand("sweep-full", "all 256 cooperation pairs (heatmap)");
    CLI::App* c_barriers =
        app.add_subcommand("sweep-barriers", "two pairs across 0..3 random barriers");
    for (CLI::App* cmd : {c_batch, c_matched, c_full, c_barriers}) {
        add_config_flag(cmd, o);
        add_world_flags(cmd, o);
        add_agent_flags(cmd, o);
        add_time_flags(cmd, o);
        add_batch_flags(cmd, o);
        cmd->add_option("--seed,--master-seed", o.seed, "master seed");
    }
    c_barriers->add_option("--pair-a", o.pair_a, "first pair, XBITS+YBITS");
    c_barriers->add_option("--pair-b", o.pair_b, "second pair, XBITS+YBITS");

    CLI::App* c_oracle =
        app.add_subcommand("oracle", "classify a world as solvable/unsolvable");
    add_config_flag(c_oracle, o);
    add_world_flags(c_oracle, o);
    c_oracle->add_option("--barriers,--nbarriers", o.nbarriers, "random barrier count 0..3");
    c_oracle->add_option("--seed", o.seed, "world seed (random world mode)");
    c_oracle->add_flag("--random", "sample a random world instead of using fixed fields");

    c_run->callback([&] {
        FileConfig f = load_config(o);
        RunConfig rc;
        rc.world = fixed_world(f, "run");
        rc.coop_x = f.coop_x;
        rc.coop_y = f.coop_y;
        rc.params_x = f.params_x;
        rc.params_y = f.params_y;
        rc.seed = o.seed.value_or(f.master_seed);
        rc.tick_ms = f.tick_ms;
        rc.cap_ms = f.cap_ms;
        rc.record_trace = o.trace_path.has_value();
        RunResult r = run(rc);
        if (o.trace_path) write_file(*o.trace_path, emit_trace_csv(r.trace));
        write_output(o, emit_run_csv({&r, 1}), out);
    });

    c_batch->callback([&] {
        FileConfig f = load_config(o);
        ExperimentConfig e = to_experiment(f, o);
        std::vector<RunResult> results = run_batch(e, f.coop_x, f.coop_y);
        write_output(o, emit_run_csv(results), out);
    });

    c_matched->callback([&] {
        FileConfig f = load_config(o);
        ExperimentConfig e = to_experiment(f, o);
        write_output(o, emit_sweep_csv(sweep_matched(e)), out);
    });

    c_full->callback([&] {
        FileConfig f = load_config(o);
        ExperimentConfig e = to_experiment(f, o);
        write_output(o, emit_heatmap(sweep_full(e)), out);
    });

    c_barriers->callback([&] {
        FileConfig f = load_config(o);
        ExperimentConfig e = to_experiment(f, o);
        CoopPair a = parse_pair_flag(o.pair_a, "--pair-a");
        CoopPair b = parse_pair_flag(o.pair_b, "--pair-b");
        write_output(o, emit_barriers_csv(sweep_barriers(e, a, b)), out);
    });

    c_oracle->callback([&] {
        FileConfig f = load_config(o);
        WorldConfig w;
        if (c_oracle->count("--random") > 0) {
            Rng rng(mix_seed(o.seed.value_or(f.master_seed),
                             static_cast<std::uint64_t>(StreamTag::World)));
            w = random_world(rng, o.nbarriers.value_or(f.nbarriers), f.target_tolerance,
                             f.vehicle_radius);
        } else {
            w = fixed_world(f, "oracle");
            validate_world(w);
        }
        write_output(o, solvable(w) ? "solvable\n" : "unsolvable\n", out);
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace pctsim
