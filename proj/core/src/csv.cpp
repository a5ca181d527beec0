#include "pctsim/csv.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace pctsim {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

const char* directive_name(Directive d) {
    switch (d) {
        case Directive::Stop: return "stop";
        case Directive::ApproachTarget: return "approach";
        case Directive::BackOff: return "backoff";
        case Directive::RandomMove: return "roam";
    }
    return "?";
}

}  // namespace

std::string emit_run_csv(std::span<const RunResult> results) {
    std::string out = "run,solved,st_ms,comm_pct_x,comm_pct_y,seed\n";
    for (size_t i = 0; i < results.size(); ++i) {
        const RunResult& r = results[i];
        out += std::to_string(i);
        out += r.solved ? ",true," : ",false,";
        if (r.st_ms) out += std::to_string(*r.st_ms);
        out += ",";
        out += num(r.comm_pct_x);
        out += ",";
        out += num(r.comm_pct_y);
        out += ",";
        out += std::to_string(r.seed);
        out += "\n";
    }
    return out;
}

std::string emit_heatmap(std::span<const SweepRow> cells) {
    if (cells.size() != 256)
        throw std::invalid_argument("heatmap requires exactly 256 cells, got " +
                                    std::to_string(cells.size()));
    std::array<const SweepRow*, 256> grid{};
    for (const SweepRow& c : cells) {
        size_t slot = static_cast<size_t>(c.coop_x.index()) * 16 +
                      static_cast<size_t>(c.coop_y.index());
        if (grid[slot]) throw std::invalid_argument("heatmap cell repeated: " +
                                                    c.coop_x.to_string() + "," +
                                                    c.coop_y.to_string());
        grid[slot] = &c;
    }
    std::string out = "coop_x,coop_y,gm,dnf,mean_st_ms,comm_pct_total\n";
    for (int xi = 0; xi < 16; ++xi) {
        for (int yi = 0; yi < 16; ++yi) {
            const SweepRow* c = grid[static_cast<size_t>(xi) * 16 + static_cast<size_t>(yi)];
            // The duplicate check plus the size check make a hole impossible,
            // but guard anyway so a miscounted caller fails loudly.
            if (!c) throw std::invalid_argument("heatmap cell missing");
            const ExperimentSummary& s = c->summary;
            out += c->coop_x.to_string();
            out += ",";
            out += c->coop_y.to_string();
            out += ",";
            out += opt_num(s.gm);
            out += ",";
            out += std::to_string(s.dnf_count);
            out += ",";
            out += opt_num(s.mean_st_ms);
            out += ",";
            out += num(0.5 * (s.comm_mean_x + s.comm_mean_y));
            out += "\n";
        }
    }
    return out;
}

std::string emit_sweep_csv(std::span<const SweepRow> rows) {
    std::string out =
        "coop_x,coop_y,gm,gm_se,gm_ci_lo,gm_ci_hi,dnf,nruns,mean_st_ms,median_st_ms,"
        "comm_x_mean,comm_x_stddev,comm_y_mean,comm_y_stddev,pearson_r\n";
    for (const SweepRow& r : rows) {
        const ExperimentSummary& s = r.summary;
        out += r.coop_x.to_string();
        out += ",";
        out += r.coop_y.to_string();
        out += ",";
        out += opt_num(s.gm);
        out += ",";
        out += opt_num(s.gm_se);
        out += ",";
        out += opt_num(s.gm_ci_lo);
        out += ",";
        out += opt_num(s.gm_ci_hi);
        out += ",";
        out += std::to_string(s.dnf_count);
        out += ",";
        out += std::to_string(s.nruns);
        out += ",";
        out += opt_num(s.mean_st_ms);
        out += ",";
        out += opt_num(s.median_st_ms);
        out += ",";
        out += num(s.comm_mean_x);
        out += ",";
        out += num(s.comm_stddev_x);
        out += ",";
        out += num(s.comm_mean_y);
        out += ",";
        out += num(s.comm_stddev_y);
        out += ",";
        out += opt_num(s.pearson_r);
        out += "\n";
    }
    return out;
}

std::string emit_barriers_csv(std::span<const BarrierSweepRow> rows) {
    std::string out = "pair,nbarriers,gm,dnf,nruns,mean_st_ms,comm_pct_total\n";
    for (const BarrierSweepRow& r : rows) {
        const ExperimentSummary& s = r.summary;
        out += r.pair.x.to_string();
        out += "+";
        out += r.pair.y.to_string();
        out += ",";
        out += std::to_string(r.nbarriers);
        out += ",";
        out += opt_num(s.gm);
        out += ",";
        out += std::to_string(s.dnf_count);
        out += ",";
        out += std::to_string(s.nruns);
        out += ",";
        out += opt_num(s.mean_st_ms);
        out += ",";
        out += num(0.5 * (s.comm_mean_x + s.comm_mean_y));
        out += "\n";
    }
    return out;
}

std::string emit_trace_csv(std::span<const TraceRow> rows) {
    std::string out =
        "tick,x,y,dir_x,dir_y,cmd_x,cmd_y,achieved_x,achieved_y,"
        "stuck_x,stuck_y,access_x,access_y,arrived_x,arrived_y,comm_x,comm_y\n";
    auto b = [](bool v) { return v ? "1" : "0"; };
    for (const TraceRow& r : rows) {
        out += std::to_string(r.tick);
        out += ",";
        out += num(r.position.x);
        out += ",";
        out += num(r.position.y);
        out += ",";
        out += directive_name(r.dir_x);
        out += ",";
        out += directive_name(r.dir_y);
        out += ",";
        out += num(r.cmd_x);
        out += ",";
        out += num(r.cmd_y);
        out += ",";
        out += num(r.achieved_x);
        out += ",";
        out += num(r.achieved_y);
        out += ",";
        out += b(r.flags_x.stuck);
        out += ",";
        out += b(r.flags_y.stuck);
        out += ",";
        out += b(r.flags_x.access);
        out += ",";
        out += b(r.flags_y.access);
        out += ",";
        out += b(r.flags_x.arrived);
        out += ",";
        out += b(r.flags_y.arrived);
        out += ",";
        out += b(r.comm_x);
        out += ",";
        out += b(r.comm_y);
        out += "\n";
    }
    return out;
}

}  // namespace pctsim
