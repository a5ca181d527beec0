#include "pctsim/config_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace pctsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

template <typename T>
std::optional<T> number_from(std::string_view s) {
    T value{};
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::optional<bool> bool_from(std::string_view s) {
    if (s == "true") return true;
    if (s == "false") return false;
    return std::nullopt;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Parser {
    FileConfig cfg;
    std::vector<ParseIssue> issues;
    std::set<std::string> seen;

    void issue(int line, std::string msg) { issues.push_back({line, std::move(msg)}); }

    bool once(int line, const std::string& section, std::string_view key) {
        std::string id = section + "." + std::string(key);
        if (!seen.insert(id).second) {
            issue(line, "duplicate key '" + std::string(key) + "'");
            return false;
        }
        return true;
    }

    std::optional<double> want_double(int line, std::string_view key, std::string_view v) {
        auto d = number_from<double>(v);
        if (!d || !std::isfinite(*d)) {
            issue(line, "key '" + std::string(key) + "': not a finite number");
            return std::nullopt;
        }
        return d;
    }

    std::optional<int> want_int(int line, std::string_view key, std::string_view v) {
        auto i = number_from<int>(v);
        if (!i) issue(line, "key '" + std::string(key) + "': not an integer");
        return i;
    }

    std::optional<bool> want_bool(int line, std::string_view key, std::string_view v) {
        auto b = bool_from(v);
        if (!b) issue(line, "key '" + std::string(key) + "': expected true or false");
        return b;
    }

    std::optional<Vec2> want_vec2(int line, std::string_view key, std::string_view v) {
        auto parts = split(v, ',');
        if (parts.size() != 2) {
            issue(line, "key '" + std::string(key) + "': expected x,y");
            return std::nullopt;
        }
        auto x = number_from<double>(parts[0]);
        auto y = number_from<double>(parts[1]);
        if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
            issue(line, "key '" + std::string(key) + "': expected two finite numbers");
            return std::nullopt;
        }
        if (*x < 0.0 || *x > 1.0 || *y < 0.0 || *y > 1.0) {
            issue(line, "key '" + std::string(key) + "': coordinates must be in [0,1]");
            return std::nullopt;
        }
        return Vec2{*x, *y};
    }

    std::optional<CoopLevel> want_coop(int line, std::string_view key, std::string_view v) {
        if (v.size() != 4 || v.find_first_not_of("01") != std::string_view::npos) {
            issue(line, "key '" + std::string(key) + "': expected four 0/1 characters");
            return std::nullopt;
        }
        return CoopLevel::from_string(v);
    }

    void world_key(int line, std::string_view key, std::string_view v) {
        if (key == "target") {
            if (once(line, "world", key))
                if (auto p = want_vec2(line, key, v)) cfg.target = *p;
        } else if (key == "vehicle_start") {
            if (once(line, "world", key))
                if (auto p = want_vec2(line, key, v)) cfg.vehicle_start = *p;
        } else if (key == "barrier") {
            auto parts = split(v, ',');
            if (parts.size() != 4) {
                issue(line, "barrier row: expected x,y,rotation,length");
                return;
            }
            auto x = number_from<double>(parts[0]);
            auto y = number_from<double>(parts[1]);
            auto rot = number_from<double>(parts[2]);
            auto len = number_from<double>(parts[3]);
            if (!x || !y || !rot || !len || !std::isfinite(*x) || !std::isfinite(*y) ||
                !std::isfinite(*rot) || !std::isfinite(*len)) {
                issue(line, "barrier row: expected four finite numbers");
                return;
            }
            if (*x < 0.0 || *x > 1.0 || *y < 0.0 || *y > 1.0) {
                issue(line, "barrier row: center must be in the unit square");
                return;
            }
            if (*rot < 0.0 || *rot >= std::numbers::pi) {
                issue(line, "barrier row: rotation must be in [0, pi)");
                return;
            }
            if (*len <= 0.0 || *len > 1.0) {
                issue(line, "barrier row: length must be in (0, 1]");
                return;
            }
            if (cfg.barriers.size() >= 3) {
                issue(line, "barrier row: at most 3 barriers are supported");
                return;
            }
            cfg.barriers.push_back({{*x, *y}, *rot, *len});
        } else if (key == "target_tolerance") {
            if (once(line, "world", key))
                if (auto d = want_double(line, key, v)) {
                    if (*d <= 0.0 || *d >= 0.5)
                        issue(line, "key 'target_tolerance': must be in (0, 0.5)");
                    else
                        cfg.target_tolerance = *d;
                }
        } else if (key == "vehicle_radius") {
            if (once(line, "world", key))
                if (auto d = want_double(line, key, v)) {
                    if (*d <= 0.0 || *d >= 0.5)
                        issue(line, "key 'vehicle_radius': must be in (0, 0.5)");
                    else
                        cfg.vehicle_radius = *d;
                }
        } else {
            issue(line, "unknown key '" + std::string(key) + "' in [world]");
        }
    }

    void agents_key(int line, std::string_view key, std::string_view v) {
        auto gain = [&](AgentParams& p) {
            if (auto d = want_double(line, key, v)) {
                if (*d <= 0.0 || *d >= 1.0)
                    issue(line, "key '" + std::string(key) + "': gain must be in (0, 1)");
                else
                    p.gain = *d;
            }
        };
        auto max_step = [&](AgentParams& p) {
            if (auto d = want_double(line, key, v)) {
                if (*d <= 0.0 || *d > 0.5)
                    issue(line, "key '" + std::string(key) + "': max_step must be in (0, 0.5]");
                else
                    p.max_step = *d;
            }
        };
        auto backoff = [&](AgentParams& p) {
            if (auto i = want_int(line, key, v)) {
                if (*i <= 0)
                    issue(line, "key '" + std::string(key) + "': backoff_ms must be positive");
                else
                    p.backoff_ms = *i;
            }
        };
        auto view = [&](AgentParams& p) {
            if (auto b = want_bool(line, key, v)) p.target_view = *b;
        };
        if (!once(line, "agents", key)) return;
        if (key == "coop_x") {
            if (auto c = want_coop(line, key, v)) cfg.coop_x = *c;
        } else if (key == "coop_y") {
            if (auto c = want_coop(line, key, v)) cfg.coop_y = *c;
        } else if (key == "gain_x") {
            gain(cfg.params_x);
        } else if (key == "gain_y") {
            gain(cfg.params_y);
        } else if (key == "max_step_x") {
            max_step(cfg.params_x);
        } else if (key == "max_step_y") {
            max_step(cfg.params_y);
        } else if (key == "backoff_ms_x") {
            backoff(cfg.params_x);
        } else if (key == "backoff_ms_y") {
            backoff(cfg.params_y);
        } else if (key == "target_view_x") {
            view(cfg.params_x);
        } else if (key == "target_view_y") {
            view(cfg.params_y);
        } else {
            issue(line, "unknown key '" + std::string(key) + "' in [agents]");
        }
    }

    void experiment_key(int line, std::string_view key, std::string_view v) {
        if (!once(line, "experiment", key)) return;
        if (key == "nruns") {
            if (auto i = want_int(line, key, v)) {
                if (*i < 1)
                    issue(line, "key 'nruns': must be >= 1");
                else
                    cfg.nruns = *i;
            }
        } else if (key == "nbarriers") {
            if (auto i = want_int(line, key, v)) {
                if (*i < 0 || *i > 3)
                    issue(line, "key 'nbarriers': must be in 0..3");
                else
                    cfg.nbarriers = *i;
            }
        } else if (key == "barrier_mode") {
            if (v == "fixed")
                cfg.barrier_mode = BarrierMode::Fixed;
            else if (v == "random_per_run")
                cfg.barrier_mode = BarrierMode::RandomPerRun;
            else
                issue(line, "key 'barrier_mode': expected fixed or random_per_run");
        } else if (key == "master_seed") {
            if (auto u = number_from<std::uint64_t>(v))
                cfg.master_seed = *u;
            else
                issue(line, "key 'master_seed': not an unsigned integer");
        } else if (key == "randomize_start_target") {
            if (auto b = want_bool(line, key, v)) cfg.randomize_start_target = *b;
        } else if (key == "tick_ms") {
            if (auto i = want_int(line, key, v)) {
                if (*i < 1)
                    issue(line, "key 'tick_ms': must be >= 1");
                else
                    cfg.tick_ms = *i;
            }
        } else if (key == "cap_ms") {
            if (auto i = want_int(line, key, v)) {
                if (*i < 1)
                    issue(line, "key 'cap_ms': must be >= 1");
                else
                    cfg.cap_ms = *i;
            }
        } else {
            issue(line, "unknown key '" + std::string(key) + "' in [experiment]");
        }
    }
};

}  // namespace

ConfigParse parse_config(std::string_view text) {
    Parser p;
    enum class Section { None, World, Agents, Experiment, Unknown };
    Section section = Section::None;
    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view raw = end == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        line_no += 1;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.issue(line_no, "malformed section header");
                section = Section::Unknown;
                continue;
            }
            std::string_view name = trim(line.substr(1, line.size() - 2));
            if (name == "world")
                section = Section::World;
            else if (name == "agents")
                section = Section::Agents;
            else if (name == "experiment")
                section = Section::Experiment;
            else {
                p.issue(line_no, "unknown section [" + std::string(name) + "]");
                section = Section::Unknown;
            }
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            p.issue(line_no, "expected key = value");
            continue;
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            p.issue(line_no, "empty key");
            continue;
        }
        switch (section) {
            case Section::World:
                p.world_key(line_no, key, value);
                break;
            case Section::Agents:
                p.agents_key(line_no, key, value);
                break;
            case Section::Experiment:
                p.experiment_key(line_no, key, value);
                break;
            case Section::Unknown:
                break;  // already reported at the header
            case Section::None:
                p.issue(line_no, "key outside any section");
                break;
        }
    }

    if (p.cfg.cap_ms % p.cfg.tick_ms != 0)
        p.issue(0, "cap_ms must be a multiple of tick_ms");
    if (p.cfg.barrier_mode == BarrierMode::Fixed && !p.cfg.randomize_start_target &&
        (!p.cfg.target || !p.cfg.vehicle_start))
        p.issue(0,
                "missing required key: fixed worlds without randomize_start_target "
                "need target and vehicle_start");

    ConfigParse out;
    out.issues = std::move(p.issues);
    if (out.issues.empty()) out.config = std::move(p.cfg);
    return out;
}

FileConfig parse_config_or_throw(std::string_view text) {
    ConfigParse parsed = parse_config(text);
    if (parsed.ok()) return *parsed.config;
    std::string msg = "invalid configuration:";
    for (const ParseIssue& i : parsed.issues) {
        msg += "\n  line " + std::to_string(i.line) + ": " + i.message;
    }
    throw ConfigError(msg);
}

std::string serialize_config(const FileConfig& c) {
    std::string out;
    auto kv = [&out](const char* k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    };
    out += "[world]\n";
    if (c.target) kv("target", fmt_double(c.target->x) + "," + fmt_double(c.target->y));
    if (c.vehicle_start)
        kv("vehicle_start", fmt_double(c.vehicle_start->x) + "," + fmt_double(c.vehicle_start->y));
    for (const Barrier& b : c.barriers) {
        kv("barrier", fmt_double(b.center.x) + "," + fmt_double(b.center.y) + "," +
                          fmt_double(b.rotation) + "," + fmt_double(b.length));
    }
    kv("target_tolerance", fmt_double(c.target_tolerance));
    kv("vehicle_radius", fmt_double(c.vehicle_radius));
    out += "\n[agents]\n";
    kv("coop_x", c.coop_x.to_string());
    kv("coop_y", c.coop_y.to_string());
    kv("gain_x", fmt_double(c.params_x.gain));
    kv("gain_y", fmt_double(c.params_y.gain));
    kv("max_step_x", fmt_double(c.params_x.max_step));
    kv("max_step_y", fmt_double(c.params_y.max_step));
    kv("backoff_ms_x", std::to_string(c.params_x.backoff_ms));
    kv("backoff_ms_y", std::to_string(c.params_y.backoff_ms));
    kv("target_view_x", c.params_x.target_view ? "true" : "false");
    kv("target_view_y", c.params_y.target_view ? "true" : "false");
    out += "\n[experiment]\n";
    kv("nruns", std::to_string(c.nruns));
    kv("nbarriers", std::to_string(c.nbarriers));
    kv("barrier_mode", c.barrier_mode == BarrierMode::Fixed ? "fixed" : "random_per_run");
    kv("master_seed", std::to_string(c.master_seed));
    kv("randomize_start_target", c.randomize_start_target ? "true" : "false");
    kv("tick_ms", std::to_string(c.tick_ms));
    kv("cap_ms", std::to_string(c.cap_ms));
    return out;
}

}  // namespace pctsim
