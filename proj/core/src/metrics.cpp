#include "pctsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pctsim {

std::optional<double> goodness(double mean_st_ms, int dnf, int nruns) {
    if (nruns < 1) throw std::invalid_argument("goodness: nruns must be >= 1");
    if (dnf < 0 || dnf > nruns) throw std::invalid_argument("goodness: dnf out of range");
    if (dnf == nruns) return std::nullopt;
    if (!(mean_st_ms > 0.0))
        throw std::invalid_argument("goodness: mean_st_ms must be positive");
    double exponent = 1.0 + static_cast<double>(dnf) / static_cast<double>(nruns);
    return exponent * std::log10(mean_st_ms);
}

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_stddev(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ExperimentSummary summarize(std::span<const RunResult> results) {
    if (results.empty()) throw std::invalid_argument("summarize: empty batch");
    ExperimentSummary s;
    s.nruns = static_cast<int>(results.size());

    std::vector<double> st;
    std::vector<double> comm_x, comm_y;
    std::vector<double> solved_comm;
    comm_x.reserve(results.size());
    comm_y.reserve(results.size());
    for (const RunResult& r : results) {
        comm_x.push_back(r.comm_pct_x);
        comm_y.push_back(r.comm_pct_y);
        if (r.solved) {
            st.push_back(static_cast<double>(*r.st_ms));
            solved_comm.push_back(0.5 * (r.comm_pct_x + r.comm_pct_y));
        } else {
            s.dnf_count += 1;
        }
    }

    s.comm_mean_x = mean_of(comm_x);
    s.comm_stddev_x = sample_stddev(comm_x, s.comm_mean_x);
    s.comm_mean_y = mean_of(comm_y);
    s.comm_stddev_y = sample_stddev(comm_y, s.comm_mean_y);

    if (!st.empty()) {
        double m = mean_of(st);
        s.mean_st_ms = m;
        s.median_st_ms = median_of(st);
        s.gm = goodness(m, s.dnf_count, s.nruns);
        // Delta-method error: gm depends on the ST mean and the DNF
        // fraction; the two terms are treated as independent.
        size_t k = st.size();
        if (k >= 2 && m > 0.0) {
            double sd = sample_stddev(st, m);
            double f = static_cast<double>(s.dnf_count) / s.nruns;
            double d_mean = (1.0 + f) / (m * std::numbers::ln10);
            double var_mean = sd * sd / static_cast<double>(k);
            double d_f = std::log10(m);
            double var_f = f * (1.0 - f) / s.nruns;
            s.gm_se = std::sqrt(d_mean * d_mean * var_mean + d_f * d_f * var_f);
        }
        s.pearson_r = pearson(solved_comm, st);
    }
    return s;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) return std::nullopt;
    double mx = mean_of(xs);
    double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx;
        double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<long, long>> histogram(std::span<const double> st_values_ms, long bin_ms) {
    if (bin_ms <= 0) throw std::invalid_argument("histogram: bin width must be positive");
    std::vector<std::pair<long, long>> out;
    if (st_values_ms.empty()) return out;
    long max_bin = 0;
    for (double v : st_values_ms)
        max_bin = std::max(max_bin, static_cast<long>(std::floor(v / bin_ms)));
    out.resize(static_cast<size_t>(max_bin) + 1);
    for (long b = 0; b <= max_bin; ++b) out[static_cast<size_t>(b)] = {b * bin_ms, 0};
    for (double v : st_values_ms) {
        long b = static_cast<long>(std::floor(v / bin_ms));
        out[static_cast<size_t>(b)].second += 1;
    }
    return out;
}

GmInterval bootstrap_gm_ci(std::span<const RunResult> results, int resamples,
                           std::uint64_t seed) {
    GmInterval out;
    if (results.empty() || resamples < 2) return out;
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(StreamTag::Bootstrap)));
    size_t n = results.size();
    std::vector<double> gms;
    gms.reserve(static_cast<size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        double st_sum = 0.0;
        int solved = 0;
        for (size_t i = 0; i < n; ++i) {
            const RunResult& r = results[rng.uniform_index(n)];
            if (r.solved) {
                st_sum += static_cast<double>(*r.st_ms);
                solved += 1;
            }
        }
        if (solved == 0) continue;
        double mean = st_sum / solved;
        if (auto g = goodness(mean, static_cast<int>(n) - solved, static_cast<int>(n)))
            gms.push_back(*g);
    }
    if (gms.size() < 2) return out;
    std::sort(gms.begin(), gms.end());
    auto quantile = [&gms](double q) {
        double pos = q * (static_cast<double>(gms.size()) - 1.0);
        size_t lo = static_cast<size_t>(pos);
        size_t hi = std::min(lo + 1, gms.size() - 1);
        double w = pos - static_cast<double>(lo);
        return (1.0 - w) * gms[lo] + w * gms[hi];
    };
    out.lo = quantile(0.025);
    out.hi = quantile(0.975);
    return out;
}

}  // namespace pctsim
