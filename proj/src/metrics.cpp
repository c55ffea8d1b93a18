#include "cdsa/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace cdsa {

SlopeFit loglog_slope(const RunTrace& trace, Metric metric, double k_lo, double k_hi) {
    auto values = metric_values(trace, metric);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < trace.recorded_k.size(); ++i) {
        double k = static_cast<double>(trace.recorded_k[i]);
        if (k < k_lo || k > k_hi) continue;
        if (!(values[i] > 0.0))
            throw std::invalid_argument("loglog_slope: window contains a non-positive metric value");
        lx.push_back(std::log10(k));
        ly.push_back(std::log10(values[i]));
    }
    if (lx.size() < 5)
        throw std::invalid_argument("loglog_slope: fewer than 5 recorded points in the window");

    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_slope: degenerate window (single k)");

    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

std::optional<long> crossover(const RunTrace& trace_a, const RunTrace& trace_b, Metric metric,
                              long burn_in) {
    if (trace_a.recorded_k != trace_b.recorded_k)
        throw std::invalid_argument("crossover: traces do not share a recording schedule");
    auto a = metric_values(trace_a, metric);
    auto b = metric_values(trace_b, metric);
    for (std::size_t i = 0; i < trace_a.recorded_k.size(); ++i) {
        if (trace_a.recorded_k[i] < burn_in) continue;
        if (a[i] <= b[i]) return trace_a.recorded_k[i];
    }
    return std::nullopt;
}

long consensus_onset(long stepsize_offset, double rho_w) {
    if (!(rho_w >= 0.0) || !(rho_w < 1.0))
        throw std::invalid_argument("consensus_onset requires rho_w in [0, 1)");
    double mixing_branch = 16.0 / (1.0 - rho_w * rho_w);
    double two_k = 2.0 * static_cast<double>(stepsize_offset);
    return static_cast<long>(std::ceil(std::max(two_k, mixing_branch)));
}

double transient_scale(int n, double rho_w, double c) {
    if (!(rho_w >= 0.0) || !(rho_w < 1.0))
        throw std::invalid_argument("transient_scale requires rho_w in [0, 1)");
    if (!(c > 0.0)) throw std::invalid_argument("transient_scale requires c > 0");
    double gap = 1.0 - rho_w;
    return c * static_cast<double>(n) / (gap * gap);
}

}  // namespace cdsa
